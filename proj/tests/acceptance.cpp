// Acceptance gate for the toolkit. Each scenario exercises one end-to-end
// guarantee, checks externally known values, and runs against a wall-clock
// budget pinned right here in the table at the bottom. One PASS/FAIL line is
// printed per scenario; the exit code is 0 only if every scenario that ran
// passed. Use --criterion N to run a single scenario.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grasscov/bounds.hpp"
#include "grasscov/codes.hpp"
#include "grasscov/errors.hpp"
#include "grasscov/gfq.hpp"
#include "grasscov/grassmann.hpp"
#include "grasscov/hamming.hpp"
#include "grasscov/netsim.hpp"
#include "grasscov/search.hpp"
#include "grasscov/store.hpp"
#include "oracles.hpp"

using namespace grasscov;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ------------------------------------------------------------- scenario 1 --
// The counting bound for covering-style packings at two multiplicities, as a
// pure formula: exact values, effectively instant.

bool crit_packing_formula(std::string& detail) {
  BigInt v1, v2;
  double best = 1e9;
  for (int pass = 0; pass < 3; ++pass) {  // warm best-of-3
    auto t0 = std::chrono::steady_clock::now();
    v1 = packing_bound_multiple(6, 4, 3, 1, 2);
    v2 = packing_bound_multiple(6, 4, 3, 2, 2);
    best = std::min(best, seconds_since(t0));
  }
  std::ostringstream d;
  d << "values " << v1.str() << "/" << v2.str() << ", best of 3: " << best * 1e3 << "ms";
  detail = d.str();
  return v1 == 93 && v2 == 186 && best < 0.001;
}

// ------------------------------------------------------------- scenario 2 --
// One step of the recursive averaging bound with a quoted inner value.

bool crit_johnson_step(std::string& detail) {
  BigInt v;
  double best = 1e9;
  for (int pass = 0; pass < 3; ++pass) {
    auto t0 = std::chrono::steady_clock::now();
    v = johnson_bound_1(6, 4, 3, 2, 2, BigInt(32));
    best = std::min(best, seconds_since(t0));
  }
  std::ostringstream d;
  d << "value " << v.str() << " from inner 32, best of 3: " << best * 1e3 << "ms";
  detail = d.str();
  return v == 134 && best < 0.001;
}

// ------------------------------------------------------------- scenario 3 --
// The doubled-lines code of F_2^3 drives the 14-node combination network:
// validity check, assignment, and an exhaustive decode of all 8 messages at
// all 364 receivers.

GrassCode doubled_lines() {
  FieldCtx F = make_field(2);
  GrassCode code(F, 3, 1);
  for (int x = 1; x < 8; ++x) {
    MatrixFq m(F, 1, 3);
    m.set(0, 0, static_cast<Fq>(x & 1));
    m.set(0, 1, static_cast<Fq>((x >> 1) & 1));
    m.set(0, 2, static_cast<Fq>((x >> 2) & 1));
    code.add(Subspace::from_matrix(m), 2);
  }
  return code;
}

bool crit_network_end_to_end(std::string& detail) {
  GrassCode code = doubled_lines();
  if (code.size() != 14) {
    detail = "construction produced " + std::to_string(code.size()) + " slots";
    return false;
  }
  ValidityReport rep = check_covering(code, 3, 1);
  if (!rep.valid) {
    detail = "doubled lines rejected by the covering checker";
    return false;
  }

  NetworkParams p;
  p.q = 2;
  p.h = 3;
  p.r = 14;
  p.alpha = 3;
  p.k = 1;
  p.eps = 1;
  CodingAssignment a = assign_scalar(p, code);
  SimulationReport sim = simulate_all(a, 1, /*message_cap=*/1'000'000);
  std::ostringstream d;
  d << "covering valid; " << sim.receivers << " receivers, ok=" << sim.ok
    << (sim.exhaustive_messages ? ", exhaustive 8-message sweep" : ", sampled");
  detail = d.str();
  return sim.receivers == 364 && sim.ok == 364 && sim.mismatch == 0 && sim.singular == 0 &&
         sim.exhaustive_messages;
}

// ------------------------------------------------------------- scenario 4 --
// Three certified extremal values: the binary line-spread maximum, the
// simple covering maximum at q=2, and its doubled multiset counterpart.

bool crit_small_optima(std::string& detail) {
  std::ostringstream d;
  bool ok = true;

  auto t0 = std::chrono::steady_clock::now();
  SearchResult a = exact_max_multiple(2, 4, 2, 1, 1);
  double ta = seconds_since(t0);
  bool spread_cert = true;
  const auto& ws = a.code.words();
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j)
      spread_cert = spread_cert && intersect_dim(ws[i].first.basis(), ws[j].first.basis()) == 0;
  BigInt formula = (oracle::ipow(2, 4) - 1) / (oracle::ipow(2, 2) - 1);
  ok = ok && a.optimal && a.size == 5 && spread_cert && formula == 5 && ta < 60.0;
  d << "max simple 5 (optimal=" << a.optimal << ", spread certificate=" << spread_cert
    << ", floor formula " << formula.str() << ", " << ta << "s)";

  t0 = std::chrono::steady_clock::now();
  SearchResult b = exact_max_covering(2, 3, 1, 1, 3);
  double tb = seconds_since(t0);
  ok = ok && b.optimal && b.size == 7 && check_covering(b.code, 3, 1).valid && tb < 60.0;
  d << "; covering max simple 7 (optimal=" << b.optimal << ", " << tb << "s)";

  t0 = std::chrono::steady_clock::now();
  SearchResult c = exact_max_covering_repeats(2, 3, 1, 1, 3);
  double tc = seconds_since(t0);
  ok = ok && c.optimal && c.size == 14 && check_covering(c.code, 3, 1).valid && tc < 60.0;
  d << "; with repeats 14 (optimal=" << c.optimal << ", " << tc << "s)";

  detail = d.str();
  return ok;
}

// ------------------------------------------------------------- scenario 5 --
// The algebraic plane-spread construction, its dual as a load-1 code of
// 4-subspaces, and the bound ledger around it: constructive lower bound 21
// against formula upper bound 93, with the published exact value quoted but
// never certificate grade.

bool crit_spread_duality(std::string& detail) {
  GrassCode sp = spread_construct(2, 6, 2);
  GrassCode dual = dualize(sp);
  std::ostringstream d;
  bool ok = sp.size() == 21 && dual.size() == 21 && dual.k() == 4 && dual.simple();
  d << "spread 21 words, dual in dimension " << dual.k();

  ValidityReport rep = check_multiple(dual, 3, 1);
  int dist = min_distance(dual);
  ok = ok && rep.valid && dist == 2;
  d << ", load-1 valid=" << rep.valid << ", min distance " << dist;

  BigInt packing = packing_bound_multiple(6, 4, 3, 1, 2);
  ok = ok && packing == 93 && BigInt(dual.size()) <= packing;
  d << "; lower 21 vs packing upper " << packing.str();

  ResultsStore lit = ResultsStore::with_literature();
  StoreKey key{Quantity::A, 2, 6, 4, 3, 1};
  auto exact = lit.exact(key);
  auto certified = lit.certified_exact(key);
  ok = ok && exact && *exact == 21 && !certified;
  d << "; quoted exact " << (exact ? exact->str() : std::string("none"))
    << " (certificate grade: " << (certified ? "yes" : "no") << ")";

  detail = d.str();
  return ok;
}

// ------------------------------------------------------------- scenario 6 --
// The covering/multiple duality transfer on random codes: a code is a valid
// covering code exactly when its dual is a valid multiple code at the
// complementary parameters. 500+ random codes, all alpha <= 4, all feasible
// delta, zero exceptions.

bool crit_duality_transfer(std::string& detail) {
  std::mt19937_64 rng(0x5eed6);
  const int sets[4][3] = {{2, 4, 2}, {2, 5, 2}, {2, 5, 3}, {3, 4, 2}};
  long long codes_tested = 0, checks = 0, exceptions = 0;
  std::string first_bad;

  for (int round = 0; round < 520; ++round) {
    const int* s = sets[round % 4];
    int q = s[0], n = s[1], k = s[2];
    FieldCtx F = make_field(q);
    int distinct = 1 + static_cast<int>(rng() % 7);
    long long max_mult = (rng() % 3 == 0) ? 2 : 1;
    GrassCode code = oracle::random_code(rng, F, n, k, distinct, max_mult);
    GrassCode dual = dualize(code);
    ++codes_tested;

    for (long long alpha = 2; alpha <= 4; ++alpha)
      for (int delta = 1; delta <= n - k; ++delta) {
        bool covering = check_covering(code, alpha, delta).valid;
        bool multiple = check_multiple(dual, n - k - delta + 1, alpha - 1).valid;
        ++checks;
        if (covering != multiple) {
          ++exceptions;
          if (first_bad.empty()) {
            std::ostringstream b;
            b << " first at (q=" << q << ",n=" << n << ",k=" << k << ",alpha=" << alpha
              << ",delta=" << delta << ",size=" << code.size() << ")";
            first_bad = b.str();
          }
        }
      }
  }
  std::ostringstream d;
  d << codes_tested << " random codes, " << checks << " transfer checks, " << exceptions
    << " exceptions" << first_bad;
  detail = d.str();
  return codes_tested >= 500 && exceptions == 0;
}

// ------------------------------------------------------------- scenario 7 --
// Complementary-multiplicity closure on the binary line Grassmannian: the
// certified maximum at load lambda plus the certified minimum cover at
// demand 7 - lambda add up to the full 35 words, wherever both searches
// certify. At lambda 1, 6 and 7 certification is mandatory.

bool crit_closure(std::string& detail) {
  SearchConfig cfg;
  cfg.node_budget = 300'000'000;
  cfg.time_budget_s = 100.0;
  std::ostringstream d;
  bool ok = true;
  std::vector<long long> certified;

  for (long long lambda = 1; lambda <= 7; ++lambda) {
    SearchResult maxr = exact_max_multiple(2, 4, 2, 1, lambda, cfg);
    SearchResult covr = exact_min_cover(2, 4, 2, 1, 7 - lambda, cfg);
    bool both = maxr.optimal && covr.optimal;
    if (both) {
      certified.push_back(lambda);
      if (maxr.size + covr.size != 35) {
        ok = false;
        d << " closure broken at lambda=" << lambda << " (" << maxr.size << "+" << covr.size
          << ");";
      }
    }
    bool mandatory = lambda == 1 || lambda == 6 || lambda == 7;
    if (mandatory && !both) {
      ok = false;
      d << " mandatory lambda=" << lambda << " not certified (max=" << maxr.optimal
        << ", cover=" << covr.optimal << ");";
    }
  }
  std::ostringstream head;
  head << "certified at lambda {";
  for (std::size_t i = 0; i < certified.size(); ++i) head << (i ? "," : "") << certified[i];
  head << "}, closure 35 holds at each;";
  detail = head.str() + d.str();
  return ok;
}

// ------------------------------------------------------------- scenario 8 --
// Quaternary maxima by exhaustive search, then the greedy construction
// clearing the doubled-lines yardstick on the (6,2) covering problem.

bool crit_q4_and_greedy(std::string& detail) {
  std::ostringstream d;
  bool ok = true;

  SearchResult simple = exact_max_covering(4, 3, 1, 1, 3);
  ok = ok && simple.optimal && simple.size == 21;
  d << "q=4 simple max " << simple.size << " (optimal=" << simple.optimal << ")";

  SearchResult rep = exact_max_covering_repeats(4, 3, 1, 1, 3);
  ok = ok && rep.optimal && rep.size == 42;
  d << ", multiset max " << rep.size << " (optimal=" << rep.optimal << ")";

  SearchConfig cfg;
  cfg.seed = 1;
  SearchResult greedy = greedy_max_covering(2, 6, 2, 2, 3, cfg);
  bool valid = check_covering(greedy.code, 3, 2).valid;
  ok = ok && valid && greedy.size > 42;
  d << "; greedy covering (n=6,k=2,delta=2,alpha=3) size " << greedy.size
    << " (valid=" << valid << ", required > 42, stretch >= 51 "
    << (greedy.size >= 51 ? "reached" : "missed") << ")";

  detail = d.str();
  return ok;
}

// ------------------------------------------------------------- scenario 9 --
// The classical-code bridge: minimum distance clears the puncturing
// threshold exactly when the generator columns form a covering code, on 200
// random binary codes; and a distance-3 codebook survives the 7-node network
// with 5 visible nodes, decoding exhaustively.

int acc_rank_f2(const std::vector<std::uint64_t>& vs) {
  std::vector<std::uint64_t> basis(64, 0);
  int r = 0;
  for (std::uint64_t v : vs) {
    for (int bit = 63; bit >= 0 && v; --bit) {
      if (!((v >> bit) & 1)) continue;
      if (!basis[bit]) {
        basis[bit] = v;
        ++r;
        v = 0;
      } else {
        v ^= basis[bit];
      }
    }
  }
  return r;
}

bool crit_distance_bridge(std::string& detail) {
  std::mt19937_64 rng(0x909);
  FieldCtx F = make_field(2);
  long long tested = 0, checks = 0, exceptions = 0;

  while (tested < 200) {
    int h = 2 + static_cast<int>(rng() % 5);                              // <= 6
    int r = h + 1 + static_cast<int>(rng() % static_cast<unsigned>(12 - h));  // <= 12
    MatrixFq G(F, h, r);
    std::vector<std::uint64_t> rows(h, 0);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < r; ++j) {
        Fq v = static_cast<Fq>(rng() % 2);
        G.set(i, j, v);
        if (v) rows[i] |= (std::uint64_t{1} << j);
      }
    if (acc_rank_f2(rows) != h) continue;
    bool zero_col = false;
    for (int j = 0; j < r && !zero_col; ++j) {
      bool z = true;
      for (int i = 0; i < h; ++i) z = z && G.at(i, j) == 0;
      zero_col = z;
    }
    if (zero_col) continue;
    ++tested;

    // independent bit-level minimum distance
    int d_brute = r + 1;
    for (int m = 1; m < (1 << h); ++m) {
      std::uint64_t cw = 0;
      for (int i = 0; i < h; ++i)
        if (m & (1 << i)) cw ^= rows[i];
      d_brute = std::min(d_brute, std::popcount(cw));
    }

    GrassCode cols = generator_to_grasscode(G);
    for (long long alpha = 2; alpha <= std::min(6, r); ++alpha) {
      bool threshold = d_brute >= r - alpha + 1;
      bool covering = check_covering(cols, alpha, h - 1).valid;
      ++checks;
      if (threshold != covering) ++exceptions;
    }
  }

  // the [7,4] distance-3 codebook on the (0,1) network with 7 nodes, 5 visible
  const int G[4][7] = {{1, 0, 0, 0, 0, 1, 1},
                       {0, 1, 0, 0, 1, 0, 1},
                       {0, 0, 1, 0, 1, 1, 0},
                       {0, 0, 0, 1, 1, 1, 1}};
  NetworkParams p;
  p.q = 2;
  p.h = 4;
  p.r = 7;
  p.alpha = 5;
  p.k = 1;
  p.eps = 0;
  std::vector<std::vector<Fq>> strings;
  for (long long idx = 0; idx < 16; ++idx) {
    std::vector<Fq> msg = message_from_index(2, 4, idx);
    std::vector<Fq> cw(7, 0);
    for (int j = 0; j < 4; ++j)
      if (msg[j])
        for (int c = 0; c < 7; ++c) cw[c] = static_cast<Fq>(cw[c] ^ G[j][c]);
    strings.push_back(cw);
  }
  NonlinearCode codebook = nonlinear_from_strings(p, strings);
  NonlinearReport chk = nonlinear_check(codebook);
  NonlinearReport sim = nonlinear_simulate(codebook);

  std::ostringstream d;
  d << tested << " random generators, " << checks << " threshold checks, " << exceptions
    << " exceptions; distance-3 codebook: criterion " << (chk.solvable ? "holds" : "fails")
    << " over " << chk.receivers_checked << " receivers, exhaustive decode "
    << (sim.solvable ? "clean" : "failed");
  detail = d.str();
  return tested == 200 && exceptions == 0 && chk.solvable && sim.solvable &&
         chk.receivers_checked == 21;
}

// ------------------------------------------------------------ scenario 10 --
// Set-packing closed forms against exhaustive search through n = 7, and the
// block structure of the union-support hierarchy on the two classical binary
// codes, everything double-checked by independent enumeration.

long long acc_brute_set_packing(int n, int k, int t, long long lambda) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      blocks.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  gen(gen, 1);
  std::map<std::vector<int>, long long> load;
  auto tsubs = [&](const std::vector<int>& b) {
    std::vector<std::vector<int>> out;
    std::vector<int> c2;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (static_cast<int>(c2.size()) == t) {
        out.push_back(c2);
        return;
      }
      for (std::size_t i = start; i < b.size(); ++i) {
        c2.push_back(b[i]);
        self(self, i + 1);
        c2.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  };
  long long best = 0;
  auto rec = [&](auto&& self, std::size_t i, long long chosen) -> void {
    best = std::max(best, chosen);
    if (i == blocks.size()) return;
    auto ts = tsubs(blocks[i]);
    bool fits = true;
    for (const auto& s : ts) fits = fits && load[s] < lambda;
    if (fits) {
      for (const auto& s : ts) ++load[s];
      self(self, i + 1, chosen + 1);
      for (const auto& s : ts) --load[s];
    }
    self(self, i + 1, chosen);
  };
  rec(rec, 0, 0);
  return best;
}

std::vector<std::uint64_t> acc_nonzero_codewords(const int G[][8], int h, int r) {
  std::vector<std::uint64_t> rows(h, 0);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < r; ++j)
      if (G[i][j]) rows[i] |= (std::uint64_t{1} << j);
  std::vector<std::uint64_t> out;
  for (int m = 1; m < (1 << h); ++m) {
    std::uint64_t cw = 0;
    for (int i = 0; i < h; ++i)
      if (m & (1 << i)) cw ^= rows[i];
    out.push_back(cw);
  }
  return out;
}

int acc_brute_union_support(const std::vector<std::uint64_t>& words, int a) {
  int best = 65;
  std::vector<int> stack;
  auto rec = [&](auto&& self, int start, std::uint64_t acc) -> void {
    if (static_cast<int>(stack.size()) == a) {
      best = std::min(best, std::popcount(acc));
      return;
    }
    for (int i = start; i < static_cast<int>(words.size()); ++i) {
      stack.push_back(i);
      self(self, i + 1, acc | words[i]);
      stack.pop_back();
    }
  };
  rec(rec, 0, 0);
  return best;
}

bool crit_turan_and_hierarchy(std::string& detail) {
  std::ostringstream d;
  bool ok = true;

  for (int n = 4; n <= 7; ++n) {
    auto closed = turan_values(n);
    for (int lam = 1; lam <= 3; ++lam) {
      SetPackingSearchResult res = max_set_packing(n, n - 2, n - 3, lam);
      long long brute = acc_brute_set_packing(n, n - 2, n - 3, lam);
      if (!res.optimal || static_cast<long long>(res.packing.blocks.size()) != closed[lam - 1] ||
          brute != closed[lam - 1]) {
        ok = false;
        d << " mismatch at n=" << n << " lambda=" << lam << " (search "
          << res.packing.blocks.size() << ", brute " << brute << ", closed "
          << closed[lam - 1] << ");";
      }
    }
  }
  SetPackingSearchResult a421 = max_set_packing(4, 2, 1, 2);
  SetPackingSearchResult a532 = max_set_packing(5, 3, 2, 2);
  ok = ok && a421.optimal && a421.packing.blocks.size() == 4;
  ok = ok && a532.optimal && a532.packing.blocks.size() == 6;
  d << " anchors (4,2,1;2)=" << a421.packing.blocks.size() << " and (5,3,2;2)="
    << a532.packing.blocks.size() << ";";

  const int G7[4][8] = {{1, 0, 0, 0, 0, 1, 1, 0},
                        {0, 1, 0, 0, 1, 0, 1, 0},
                        {0, 0, 1, 0, 1, 1, 0, 0},
                        {0, 0, 0, 1, 1, 1, 1, 0}};
  const int G8[4][8] = {{1, 0, 0, 0, 0, 1, 1, 1},
                        {0, 1, 0, 0, 1, 0, 1, 1},
                        {0, 0, 1, 0, 1, 1, 0, 1},
                        {0, 0, 0, 1, 1, 1, 1, 0}};
  struct Case {
    const int(*G)[8];
    int r;
    const char* name;
  } cases[] = {{G7, 7, "[7,4]"}, {G8, 8, "[8,4]"}};

  FieldCtx F = make_field(2);
  for (const Case& cs : cases) {
    MatrixFq gen(F, 4, cs.r);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < cs.r; ++j) gen.set(i, j, static_cast<Fq>(cs.G[i][j]));
    LinearCode lc(gen);
    std::vector<int> dvals = generalized_weights(lc);
    std::vector<int> cvals = covering_hierarchy(lc, 15);
    auto words = acc_nonzero_codewords(cs.G, 4, cs.r);

    for (int a = 1; a <= 15 && ok; ++a) {
      int brute = acc_brute_union_support(words, a);
      if (cvals[a - 1] != brute) {
        ok = false;
        d << " " << cs.name << " hierarchy c_" << a << " = " << cvals[a - 1]
          << " disagrees with brute " << brute << ";";
      }
    }
    for (int i = 0; i <= 3 && ok; ++i)
      for (int a = (1 << i); a <= (1 << (i + 1)) - 1 && a <= 15; ++a)
        if (cvals[a - 1] != dvals[i]) {
          ok = false;
          d << " " << cs.name << " block rule broken at a=" << a << ";";
        }
  }
  d << " union-support blocks match the weight hierarchy on both codes";
  detail = d.str();
  return ok;
}

// ------------------------------------------------------------ scenario 11 --
// The containment count: a fixed t-subspace lies in exactly as many
// k-subspaces as the smaller Grassmannian predicts, by full enumeration.

bool crit_containment_counts(std::string& detail) {
  const int triples[3][4] = {{2, 4, 2, 1}, {2, 5, 3, 2}, {3, 4, 2, 1}};
  std::ostringstream d;
  bool ok = true;
  for (const auto& tr : triples) {
    int q = tr[0], n = tr[1], k = tr[2], t = tr[3];
    FieldCtx F = make_field(q);
    auto tsubs = enumerate_grassmannian(F, n, t);
    auto words = enumerate_grassmannian(F, n, k);
    BigInt expected = oracle::qbinom(n - t, k - t, q);
    // first and last fixed t-subspaces, full scan each
    for (const Subspace* T : {&tsubs.front(), &tsubs.back()}) {
      long long count = 0;
      for (const Subspace& w : words)
        if (oracle::contains_brute(w, *T)) ++count;
      if (BigInt(count) != expected || expected != gaussian_binomial(n - t, k - t, q)) ok = false;
    }
    d << " (q=" << q << ",n=" << n << ",k=" << k << ",t=" << t << "): " << expected.str();
  }
  detail = "containment counts" + d.str();
  return ok;
}

// ---------------------------------------------------------------- harness --

struct Scenario {
  int id;
  const char* title;
  double budget_s;
  bool (*fn)(std::string&);
};

const Scenario kScenarios[] = {
    {1, "counting bound formulas at two multiplicities", 1.0, crit_packing_formula},
    {2, "one-step averaging bound with a quoted inner value", 1.0, crit_johnson_step},
    {3, "doubled lines drive the 14-node network exhaustively", 10.0, crit_network_end_to_end},
    {4, "certified small maxima, simple and multiset", 180.0, crit_small_optima},
    {5, "plane spread, its dual, and the bound ledger", 10.0, crit_spread_duality},
    {6, "covering/multiple duality transfer on random codes", 300.0, crit_duality_transfer},
    {7, "complementary-multiplicity closure to the full Grassmannian", 1800.0, crit_closure},
    {8, "quaternary exhaustive maxima and the greedy yardstick", 600.0, crit_q4_and_greedy},
    {9, "distance threshold bridge and the distance-3 codebook", 300.0, crit_distance_bridge},
    {10, "set-packing closed forms and the union-support blocks", 600.0, crit_turan_and_hierarchy},
    {11, "fixed-subspace containment counts by enumeration", 60.0, crit_containment_counts},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--list") {
      for (const Scenario& s : kScenarios)
        std::cout << "C" << s.id << "  " << s.title << "  (budget " << s.budget_s << "s)\n";
      return 0;
    } else {
      std::cerr << "usage: grasscov_acceptance [--criterion N] [--list]\n";
      return 1;
    }
  }

  bool all_ok = true;
  bool ran_any = false;
  for (const Scenario& s : kScenarios) {
    if (only != 0 && s.id != only) continue;
    ran_any = true;
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = s.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("threw: ") + e.what();
      ok = false;
    }
    double elapsed = seconds_since(t0);
    bool in_budget = elapsed <= s.budget_s;
    bool pass = ok && in_budget;
    all_ok = all_ok && pass;
    std::cout << "C" << s.id << (s.id < 10 ? "  " : " ") << (pass ? "PASS" : "FAIL") << "  "
              << elapsed << "s/" << s.budget_s << "s  " << s.title << ": " << detail;
    if (!in_budget) std::cout << " [over budget]";
    std::cout << "\n";
  }
  if (!ran_any) {
    std::cerr << "no such criterion\n";
    return 1;
  }
  return all_ok ? 0 : 1;
}
