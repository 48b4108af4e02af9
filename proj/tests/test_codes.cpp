#include <doctest.h>

#include <random>

#include "grasscov/codes.hpp"
#include "grasscov/errors.hpp"
#include "grasscov/search.hpp"
#include "oracles.hpp"

using namespace grasscov;

namespace {

// all 7 lines of F_2^3, each with the given multiplicity
GrassCode lines_code(long long mult) {
  FieldCtx F = make_field(2);
  GrassCode code(F, 3, 1);
  for (const Subspace& s : enumerate_grassmannian(F, 3, 1)) code.add(s, mult);
  return code;
}

}  // namespace

TEST_SUITE("codes") {

TEST_CASE("adding an existing word raises its multiplicity instead of duplicating it") {
  FieldCtx F = make_field(2);
  auto lines = enumerate_grassmannian(F, 3, 1);
  GrassCode code(F, 3, 1);
  code.add(lines[0]);
  code.add(lines[1], 3);
  code.add(lines[0], 2);
  CHECK(code.size() == 6);
  CHECK(code.distinct_count() == 2);
  CHECK(code.multiplicity_of(lines[0]) == 3);
  CHECK(code.multiplicity_of(lines[1]) == 3);
  CHECK(code.multiplicity_of(lines[2]) == 0);
  CHECK_FALSE(code.simple());
  GrassCode simple(F, 3, 1);
  simple.add(lines[0]);
  CHECK(simple.simple());
}

TEST_CASE("words of the wrong shape or field are rejected") {
  FieldCtx F2 = make_field(2), F3 = make_field(3);
  GrassCode code(F2, 4, 2);
  CHECK_THROWS_AS(code.add(enumerate_grassmannian(F2, 4, 1)[0]), DimensionMismatch);
  CHECK_THROWS_AS(code.add(enumerate_grassmannian(F2, 5, 2)[0]), DimensionMismatch);
  CHECK_THROWS_AS(code.add(enumerate_grassmannian(F3, 4, 2)[0]), DimensionMismatch);
}

TEST_CASE("every fixed t-subspace lies in the same number of enumerated k-subspaces") {
  struct Params {
    int q, n, k, t;
  };
  for (auto [q, n, k, t] : {Params{2, 4, 2, 1}, Params{2, 5, 3, 2}, Params{3, 4, 2, 1}}) {
    CAPTURE(q);
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(t);
    FieldCtx F = make_field(q);
    // T = span of the first t unit vectors
    MatrixFq tb(F, t, n);
    for (int i = 0; i < t; ++i) tb.set(i, i, 1);
    Subspace T = Subspace::from_matrix(tb);
    BigInt count = 0;
    for (const Subspace& w : enumerate_grassmannian(F, n, k))
      if (w.contains(T)) ++count;
    CHECK(count == oracle::qbinom(n - t, k - t, q));
  }
}

TEST_CASE("doubled lines form a covering code for three slots over span two") {
  GrassCode code = lines_code(2);
  ValidityReport r = check_covering(code, 3, 1);
  CHECK(r.valid);
  CHECK_FALSE(r.vacuous);
  CHECK_FALSE(r.degenerate_alpha);
}

TEST_CASE("a triple line breaks the same covering condition, with a replayable witness") {
  FieldCtx F = make_field(2);
  auto lines = enumerate_grassmannian(F, 3, 1);
  GrassCode code(F, 3, 1);
  code.add(lines[0], 3);
  for (size_t i = 1; i < lines.size(); ++i) code.add(lines[i], 2);
  ValidityReport r = check_covering(code, 3, 1);
  REQUIRE_FALSE(r.valid);
  REQUIRE(r.covering_witness.has_value());
  const CoveringWitness& w = *r.covering_witness;
  REQUIRE(w.slots.size() == 3);
  // replay: the named slots really span what the checker claims
  std::vector<const Subspace*> parts;
  for (int idx : w.slots) parts.push_back(&code.words()[static_cast<size_t>(idx)].first);
  CHECK(oracle::joint_span_dim(parts) == w.span_dim);
  CHECK(w.span_dim < 1 + code.k());
  // the only way to fall under span 2 here is the tripled line three times
  CHECK(w.slots == std::vector<int>{0, 0, 0});
}

TEST_CASE("covering checks respect multiplicity limits when reusing a word") {
  // one line twice plus a distinct line: no selection of three slots can use
  // the doubled line three times, so the code stays valid
  FieldCtx F = make_field(2);
  auto lines = enumerate_grassmannian(F, 3, 1);
  GrassCode code(F, 3, 1);
  code.add(lines[0], 2);
  code.add(lines[1], 1);
  CHECK(check_covering(code, 3, 1).valid);
}

TEST_CASE("a covering check on a code smaller than alpha is vacuous") {
  FieldCtx F = make_field(2);
  GrassCode code(F, 3, 1);
  code.add(enumerate_grassmannian(F, 3, 1)[0]);
  ValidityReport r = check_covering(code, 2, 1);
  CHECK(r.valid);
  CHECK(r.vacuous);
}

TEST_CASE("alpha = 1 is flagged as degenerate") {
  GrassCode code = lines_code(1);
  ValidityReport r = check_covering(code, 1, 1);
  CHECK(r.degenerate_alpha);
  CHECK_FALSE(r.valid);  // a single 1-dim word never spans 2
}

TEST_CASE("covering parameter validation") {
  GrassCode code = lines_code(1);
  CHECK_THROWS_AS(check_covering(code, 0, 1), InvalidArgs);
  CHECK_THROWS_AS(check_covering(code, 2, 0), InvalidArgs);
  CHECK_THROWS_AS(min_alpha_span(code, 0), InvalidArgs);
  CHECK_THROWS_AS(min_alpha_span(code, 8), TooFewCodewords);
}

TEST_CASE("min_alpha_span matches the brute-force minimum over selections") {
  std::mt19937_64 rng(2024);
  FieldCtx F = make_field(2);
  for (int iter = 0; iter < 30; ++iter) {
    GrassCode code = oracle::random_code(rng, F, 4, 2, 3 + static_cast<int>(rng() % 3), 2);
    for (long long alpha = 1; alpha <= 3; ++alpha) {
      if (code.size() < alpha) continue;
      int got = min_alpha_span(code, alpha);
      // the true minimum is the largest bar every selection clears
      int lo = code.k();
      while (lo < code.n() && oracle::covering_ok_brute(code, alpha, lo + 1)) ++lo;
      CHECK(got == lo);
    }
  }
}

TEST_CASE("t-subspace loads match an independent containment count") {
  std::mt19937_64 rng(77);
  for (int q : {2, 3}) {
    FieldCtx F = make_field(q);
    for (int iter = 0; iter < 12; ++iter) {
      GrassCode code = oracle::random_code(rng, F, 4, 2, 3, 3);
      for (int t : {1, 2}) {
        CAPTURE(q);
        CAPTURE(t);
        CHECK(max_tsubspace_load(code, t) == oracle::max_load_brute(code, t));
      }
    }
  }
}

TEST_CASE("multiple-code checks agree with the brute-force load oracle") {
  std::mt19937_64 rng(88);
  FieldCtx F = make_field(2);
  for (int iter = 0; iter < 40; ++iter) {
    GrassCode code = oracle::random_code(rng, F, 4, 2, 2 + static_cast<int>(rng() % 4), 2);
    for (int t : {1, 2})
      for (long long lambda = 1; lambda <= 3; ++lambda) {
        ValidityReport r = check_multiple(code, t, lambda);
        CHECK(r.valid == oracle::multiple_ok_brute(code, t, lambda));
        if (!r.valid) {
          REQUIRE(r.multiple_witness.has_value());
          const MultipleWitness& w = *r.multiple_witness;
          CHECK(w.load > lambda);
          long long recount = 0;
          for (int idx : w.word_indices) {
            const auto& [word, mult] = code.words()[static_cast<size_t>(idx)];
            CHECK(oracle::contains_brute(word, w.t_subspace));
            recount += mult;
          }
          CHECK(recount == w.load);
        }
      }
  }
}

TEST_CASE("line loads on a doubled-line code are the multiplicities themselves") {
  GrassCode code = lines_code(2);
  CHECK(check_multiple(code, 1, 2).valid);
  ValidityReport r = check_multiple(code, 1, 1);
  REQUIRE_FALSE(r.valid);
  REQUIRE(r.multiple_witness.has_value());
  CHECK(r.multiple_witness->load == 2);
  CHECK(r.multiple_witness->word_indices.size() == 1);
}

TEST_CASE("minimum distance of a partition-of-space code is the full k") {
  GrassCode spread = spread_construct(2, 6, 2);
  CHECK(min_distance(spread) == 2);
  GrassCode dual = dualize(spread);
  CHECK(min_distance(dual) == 2);
  CHECK_THROWS_AS((void)min_distance(lines_code(2)), NotSimple);
  FieldCtx F = make_field(2);
  GrassCode tiny(F, 3, 1);
  tiny.add(enumerate_grassmannian(F, 3, 1)[0]);
  CHECK_THROWS_AS((void)min_distance(tiny), TooFewCodewords);
}

TEST_CASE("dualize is a multiplicity-preserving involution into the complement dimension") {
  std::mt19937_64 rng(99);
  for (int q : {2, 3}) {
    FieldCtx F = make_field(q);
    for (int iter = 0; iter < 20; ++iter) {
      GrassCode code = oracle::random_code(rng, F, 5, 2, 4, 3);
      GrassCode dual = dualize(code);
      CHECK(dual.n() == 5);
      CHECK(dual.k() == 3);
      CHECK(dual.size() == code.size());
      CHECK(dual.distinct_count() == code.distinct_count());
      CHECK(dualize(dual) == code);
      for (const auto& [w, mult] : code.words())
        CHECK(dual.multiplicity_of(orthogonal_complement(w)) == mult);
    }
  }
}

TEST_CASE("complement splits the Grassmannian exactly") {
  FieldCtx F = make_field(2);
  GrassCode spread = spread_construct(2, 4, 2);
  GrassCode rest = complement(spread);
  CHECK(BigInt(spread.size() + rest.size()) == oracle::qbinom(4, 2, 2));
  for (const auto& [w, mult] : rest.words()) {
    CHECK(mult == 1);
    CHECK(spread.multiplicity_of(w) == 0);
  }
  GrassCode all = rest;
  for (const auto& [w, mult] : spread.words()) all.add(w, mult);
  CHECK(BigInt(all.distinct_count()) == oracle::qbinom(4, 2, 2));
  CHECK_THROWS_AS((void)complement(lines_code(2)), NotSimple);
}

TEST_CASE("covering validity transfers to the dual multiple-code condition and back") {
  std::mt19937_64 rng(13);
  struct Params {
    int q, n, k;
  };
  int combos = 0;
  for (auto [q, n, k] : {Params{2, 4, 2}, Params{2, 5, 2}, Params{2, 5, 3}, Params{3, 4, 2}}) {
    FieldCtx F = make_field(q);
    for (int iter = 0; iter < 30; ++iter) {
      GrassCode code =
          oracle::random_code(rng, F, n, k, 1 + static_cast<int>(rng() % 5), 2);
      GrassCode dual = dualize(code);
      for (long long alpha = 2; alpha <= 4; ++alpha)
        for (int delta = 1; delta <= n - k; ++delta) {
          bool covering = check_covering(code, alpha, delta).valid;
          bool multiple = check_multiple(dual, n - k - delta + 1, alpha - 1).valid;
          CAPTURE(q);
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(alpha);
          CAPTURE(delta);
          CHECK(covering == multiple);
          ++combos;
        }
    }
  }
  CHECK(combos >= 500);
}

}  // TEST_SUITE
