#include <doctest.h>

#include "grasscov/bounds.hpp"
#include "grasscov/errors.hpp"
#include "grasscov/search.hpp"
#include "oracles.hpp"

using namespace grasscov;

TEST_SUITE("bounds") {

TEST_CASE("lambda_complete counts the k-subspaces through a fixed t-subspace") {
  CHECK(lambda_complete(4, 2, 1, 2) == 7);                       // [3 1]_2
  CHECK(lambda_complete(6, 4, 3, 2) == 7);                       // [3 1]_2
  CHECK(lambda_complete(3, 2, 2, 4) == 1);                       // [1 0]_4
  CHECK(lambda_complete(5, 3, 1, 3) == oracle::qbinom(4, 2, 3));
}

TEST_CASE("packing bound anchors and the closed form") {
  CHECK(packing_bound_multiple(6, 4, 3, 1, 2) == 93);
  CHECK(packing_bound_multiple(6, 4, 3, 2, 2) == 186);
  CHECK(packing_bound_multiple(4, 2, 1, 1, 2) == 5);
  // closed form against the independent q-binomials across a grid
  for (int q : {2, 3}) {
    for (int n = 3; n <= 7; ++n)
      for (int k = 2; k < n; ++k)
        for (int t = 1; t < k; ++t) {
          BigInt lc = lambda_complete(n, k, t, q);
          for (BigInt lambda = 1; lambda <= lc && lambda <= 4; ++lambda) {
            CAPTURE(q);
            CAPTURE(n);
            CAPTURE(k);
            CAPTURE(t);
            BigInt want = lambda * oracle::qbinom(n, t, q) / oracle::qbinom(k, t, q);
            CHECK(packing_bound_multiple(n, k, t, lambda, q) == want);
          }
        }
  }
}

TEST_CASE("packing bound rejects out-of-range shapes and over-complete simple multiplicity") {
  CHECK_THROWS_AS((void)packing_bound_multiple(6, 4, 0, 1, 2), InvalidArgs);
  CHECK_THROWS_AS((void)packing_bound_multiple(6, 4, 4, 1, 2), InvalidArgs);
  CHECK_THROWS_AS((void)packing_bound_multiple(4, 4, 1, 1, 2), InvalidArgs);
  CHECK_THROWS_AS((void)packing_bound_multiple(4, 2, 1, 0, 2), InvalidArgs);
  // beyond the completeness threshold only the repeat-allowed reading survives
  CHECK_THROWS_AS((void)packing_bound_multiple(4, 2, 1, 8, 2), InvalidArgs);
  CHECK(packing_bound_multiple(4, 2, 1, 8, 2, true) == 40);
}

TEST_CASE("covering packing bound is the dual translation of the multiple one") {
  CHECK(packing_bound_covering(3, 1, 1, 3, 2, true) == 14);
  for (int q : {2, 3}) {
    for (int n = 3; n <= 6; ++n)
      for (int k = 1; k < n; ++k)
        for (int delta = 1; delta <= n - k; ++delta) {
          BigInt cap = oracle::qbinom(k + delta - 1, k, q) + 1;
          for (BigInt alpha = 2; alpha <= 4; ++alpha) {
            bool repeats = alpha > cap;
            BigInt direct = packing_bound_covering(n, k, delta, alpha, q, repeats);
            // at delta = 1 the translated shape has t = k, where the load cap
            // sits on the words themselves: (alpha-1) [n k]_q
            BigInt translated =
                delta == 1
                    ? (alpha - 1) * oracle::qbinom(n, k, q)
                    : packing_bound_multiple(n, n - k, n - k - delta + 1, alpha - 1, q, repeats);
            CAPTURE(q);
            CAPTURE(n);
            CAPTURE(k);
            CAPTURE(delta);
            CHECK(direct == translated);
          }
        }
  }
  // the simple-code ceiling on alpha
  CHECK_THROWS_AS((void)packing_bound_covering(3, 1, 1, 3, 2), InvalidArgs);
}

TEST_CASE("first Johnson step reproduces the stored-inner-value chain") {
  CHECK(johnson_bound_1(6, 4, 3, 2, 2, 32) == 134);
  // floor((q^n - 1)/(q^k - 1) * inner), recomputed directly
  BigInt want = (oracle::ipow(2, 6) - 1) * 32 / (oracle::ipow(2, 4) - 1);
  CHECK(johnson_bound_1(6, 4, 3, 2, 2, 32) == want);
}

TEST_CASE("second Johnson step value and its multiplicity gate") {
  CHECK(johnson_bound_2(5, 2, 1, 1, 2, 5) == 22);
  BigInt want = (oracle::ipow(2, 5) - 1) * 5 / (oracle::ipow(2, 3) - 1);
  CHECK(johnson_bound_2(5, 2, 1, 1, 2, 5) == want);
  // the step only holds while lambda <= [n-1-t k-t]_q
  BigInt gate = oracle::qbinom(5 - 1 - 1, 2 - 1, 2);
  CHECK(gate == 7);
  CHECK_NOTHROW((void)johnson_bound_2(5, 2, 1, 7, 2, 5));
  CHECK_THROWS_AS((void)johnson_bound_2(5, 2, 1, 8, 2, 5), InvalidArgs);
}

TEST_CASE("covering Johnson steps compute the right prefactors and gate") {
  for (int q : {2, 3}) {
    BigInt inner = 17;
    for (int n = 4; n <= 6; ++n)
      for (int k = 1; k < n; ++k)
        for (int delta = 1; delta <= n - k; ++delta) {
          BigInt alpha = 3;
          CAPTURE(q);
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(delta);
          // step 1 keeps k and sheds one ambient dimension; it inherits the
          // multiplicity gate alpha - 1 <= [k+delta-2 k-1]_q from duality
          BigInt gate = oracle::qbinom(k + delta - 2, k - 1, q);
          if (alpha - 1 <= gate) {
            BigInt want1 = (oracle::ipow(q, n) - 1) * inner / (oracle::ipow(q, n - k) - 1);
            CHECK(johnson_bound_covering_1(n, k, delta, alpha, q, inner) == want1);
          } else {
            CHECK_THROWS_AS(
                (void)johnson_bound_covering_1(n, k, delta, alpha, q, inner), InvalidArgs);
          }
          // step 2 sheds a dimension from both n and k, ungated
          BigInt want2 = (oracle::ipow(q, n) - 1) * inner / (oracle::ipow(q, k) - 1);
          CHECK(johnson_bound_covering_2(n, k, delta, alpha, q, inner) == want2);
        }
  }
}

TEST_CASE("engine with one stored exact value reproduces the chained upper bound") {
  ResultsStore store;
  StoreEntry e;
  e.lower = BigInt(32);
  e.upper = BigInt(32);
  e.provenance = "literature";
  e.citation = "exhaustive classification";
  store.update(StoreKey{Quantity::A, 2, 5, 3, 2, 2}, e);
  BoundEngine eng(2, &store);
  BoundEntry top = eng.upper_multiple(6, 4, 3, 2);
  CHECK(top.value == 134);
  CHECK_FALSE(top.trace.empty());
}

TEST_CASE("a stored exact value for the queried key preempts every formula") {
  ResultsStore store;
  StoreEntry e;
  e.lower = BigInt(21);
  e.upper = BigInt(21);
  e.provenance = "literature";
  e.citation = "published tables";
  store.update(StoreKey{Quantity::A, 2, 6, 4, 3, 1}, e);
  BoundEngine eng(2, &store);
  BoundEntry top = eng.upper_multiple(6, 4, 3, 1);
  CHECK(top.value == 21);
  CHECK(top.rule == "exact");
}

TEST_CASE("without stored values the engine still never exceeds the packing formula") {
  BoundEngine eng(2);
  BoundEntry top = eng.upper_multiple(6, 4, 3, 1);
  CHECK(top.value <= 93);
  CHECK(top.value >= 21);  // the true value; no upper bound may dip below it
}

TEST_CASE("repeat-allowed quantities scale at least linearly in the engine table") {
  BoundEngine eng(2);
  BoundTable table = eng.bound_table(4, 2, 1, 1, 7, false);
  REQUIRE(table.rows.size() == 7);
  BigInt prev = 0;
  for (const BoundRow& row : table.rows) {
    CHECK(row.best_upper >= prev);  // monotone in lambda
    prev = row.best_upper;
    CHECK(row.best_upper <= packing_bound_multiple(4, 2, 1, row.lambda, 2));
    if (row.best_lower) CHECK(*row.best_lower <= row.best_upper);
    for (const BoundEntry& u : row.uppers) CHECK(u.value >= row.best_upper);
  }
}

TEST_CASE("complete-multiplicity rows collapse to the whole Grassmannian") {
  BoundEngine eng(2);
  // at lambda = [n-t k-t]_q the full Grassmannian is a valid code
  BoundEntry top = eng.upper_multiple(4, 2, 1, 7);
  CHECK(top.value == oracle::qbinom(4, 2, 2));
  std::optional<BoundEntry> low = eng.lower_multiple(4, 2, 1, 7);
  REQUIRE(low.has_value());
  CHECK(low->value == oracle::qbinom(4, 2, 2));
}

TEST_CASE("covering-side engine values translate the multiple-side ones") {
  BoundEngine eng(2);
  CHECK(eng.upper_covering(3, 1, 1, 3, true).value == 14);
  CHECK(eng.upper_covering(3, 1, 1, 3, false).value == 7);
  BoundEngine eng4(4);
  CHECK(eng4.upper_covering(3, 1, 1, 3, false).value == 21);
  CHECK(eng4.upper_covering(3, 1, 1, 3, true).value == 42);
}

TEST_CASE("upper bounds dominate everything the search construction finds") {
  struct Params {
    int q, n, k, t;
    long long lambda;
  };
  for (auto [q, n, k, t, lambda] :
       {Params{2, 4, 2, 1, 1}, Params{2, 4, 2, 1, 2}, Params{2, 5, 2, 1, 1},
        Params{3, 4, 2, 1, 1}}) {
    BoundEngine eng(q);
    SearchConfig cfg;
    cfg.restarts = 2;
    SearchResult greedy = greedy_max_multiple(q, n, k, t, lambda, cfg);
    CAPTURE(q);
    CAPTURE(n);
    CHECK(BigInt(greedy.size) <= eng.upper_multiple(n, k, t, lambda).value);
  }
}

TEST_CASE("identity checks demand certified values and then verify the closures") {
  ResultsStore store;
  auto put = [&store](Quantity qty, long long la, long long value) {
    StoreEntry e;
    e.lower = BigInt(value);
    e.upper = BigInt(value);
    e.optimal = true;
    e.provenance = "search-certificate";
    store.update(StoreKey{qty, 2, 4, 2, 1, la}, e);
  };

  CHECK_THROWS_AS((void)identity_checks(2, 4, 2, 1, 1, store), MissingExactValue);

  put(Quantity::A, 1, 5);
  put(Quantity::C, 6, 30);  // complementary multiplicity: 7 - 1
  put(Quantity::C, 1, 5);
  IdentityReport rep = identity_checks(2, 4, 2, 1, 1, store);
  bool saw_complement = false, saw_order = false;
  for (const IdentityOutcome& oc : rep.outcomes) {
    if (oc.name == "complement-sum") {
      saw_complement = true;
      CHECK(oc.status == "holds");
    }
    if (oc.name == "packing-vs-cover") {
      saw_order = true;
      CHECK(oc.status == "holds");
    }
  }
  CHECK(saw_complement);
  CHECK(saw_order);
  CHECK(rep.design_detected);  // A = C here: a perfect partition structure exists

  // a wrong complementary value must be called out
  ResultsStore bad;
  auto putbad = [&bad](Quantity qty, long long la, long long value) {
    StoreEntry e;
    e.lower = BigInt(value);
    e.upper = BigInt(value);
    e.optimal = true;
    e.provenance = "search-certificate";
    bad.update(StoreKey{qty, 2, 4, 2, 1, la}, e);
  };
  putbad(Quantity::A, 1, 5);
  putbad(Quantity::C, 6, 29);
  putbad(Quantity::C, 1, 5);
  IdentityReport rep2 = identity_checks(2, 4, 2, 1, 1, bad);
  bool flagged = false;
  for (const IdentityOutcome& oc : rep2.outcomes)
    if (oc.name == "complement-sum") flagged = (oc.status == "fails");
  CHECK(flagged);
}

TEST_CASE("literature-grade exacts do not count as certificates for identities") {
  ResultsStore store;
  auto lit = [&store](Quantity qty, long long la, long long value) {
    StoreEntry e;
    e.lower = BigInt(value);
    e.upper = BigInt(value);
    e.provenance = "literature";
    e.citation = "published tables";
    store.update(StoreKey{qty, 2, 4, 2, 1, la}, e);
  };
  lit(Quantity::A, 1, 5);
  lit(Quantity::C, 6, 30);
  lit(Quantity::C, 1, 5);
  CHECK_THROWS_AS((void)identity_checks(2, 4, 2, 1, 1, store), MissingExactValue);
}

}  // TEST_SUITE
