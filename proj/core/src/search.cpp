#include "grasscov/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace grasscov {

namespace {

void validate_multiple_params(int n, int k, int t, long long lambda) {
  if (n < 1 || k < 1 || k > n) throw InvalidArgs("need 1 <= k <= n");
  if (t < 0 || t > k) throw InvalidArgs("need 0 <= t <= k");
  if (lambda < 1) throw InvalidArgs("lambda must be >= 1");
}

std::optional<long long> to_ll(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    return std::nullopt;
  return v.convert_to<long long>();
}

// Candidate words, t-subspace units, and the incidence between them, all in
// canonical enumeration order so item indices double as a canonical order.
struct Universe {
  FieldCtx ctx;
  int n = 0, k = 0, t = 0;
  std::vector<Subspace> words;
  std::vector<Subspace> units;
  std::vector<std::vector<int>> word_units;
};

Universe build_universe(int q, int n, int k, int t, long long enum_budget) {
  Universe u;
  u.ctx = make_field(q);
  u.n = n;
  u.k = k;
  u.t = t;
  u.words = enumerate_grassmannian(u.ctx, n, k, enum_budget);
  u.units = enumerate_grassmannian(u.ctx, n, t, enum_budget);
  std::unordered_map<Subspace, int, SubspaceHash> unit_index;
  unit_index.reserve(u.units.size() * 2);
  for (int i = 0; i < static_cast<int>(u.units.size()); ++i) unit_index.emplace(u.units[i], i);
  // t-subspaces of a word are images of the t-subspaces of F_q^k under its
  // basis, which is injective on subspaces of the row space.
  auto inner = enumerate_grassmannian(u.ctx, k, t, enum_budget);
  u.word_units.reserve(u.words.size());
  for (const auto& w : u.words) {
    std::vector<int> ids;
    ids.reserve(inner.size());
    for (const auto& ts : inner) {
      Subspace amb = Subspace::from_matrix(mat_mul(ts.basis(), w.basis()));
      ids.push_back(unit_index.at(amb));
    }
    std::sort(ids.begin(), ids.end());
    u.word_units.push_back(std::move(ids));
  }
  return u;
}

void det_shuffle(std::vector<int>& v, std::uint64_t seed) {
  std::uint64_t s = seed ? seed : 0x9E3779B97F4A7C15ULL;
  auto next = [&]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  };
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next() % i]);
}

// One greedy pass in the given candidate order. Picks, among words whose
// units all still have spare capacity, the one whose busiest unit stays
// lowest (then the lightest total load); the order breaks remaining ties.
std::vector<int> greedy_pass(const Universe& U, long long lambda, const std::vector<int>& order) {
  std::vector<long long> load(U.units.size(), 0);
  std::vector<char> in(U.word_units.size(), 0);
  std::vector<int> chosen;
  const int N = static_cast<int>(U.word_units.size());
  for (;;) {
    int best = -1;
    long long bmax = 0, bsum = 0;
    for (int idx = 0; idx < N; ++idx) {
      int i = order[idx];
      if (in[i]) continue;
      long long mx = 0, sm = 0;
      bool ok = true;
      for (int un : U.word_units[i]) {
        if (load[un] >= lambda) {
          ok = false;
          break;
        }
        mx = std::max(mx, load[un] + 1);
        sm += load[un];
      }
      if (!ok) continue;
      if (best < 0 || mx < bmax || (mx == bmax && sm < bsum)) {
        best = i;
        bmax = mx;
        bsum = sm;
      }
    }
    if (best < 0) break;
    in[best] = 1;
    chosen.push_back(best);
    for (int un : U.word_units[best]) ++load[un];
  }
  // The loop ends only at maximality; the sweep guards that invariant against
  // future scoring changes.
  for (int i = 0; i < N; ++i) {
    if (in[i]) continue;
    bool ok = true;
    for (int un : U.word_units[i])
      if (load[un] >= lambda) {
        ok = false;
        break;
      }
    if (ok) {
      in[i] = 1;
      chosen.push_back(i);
      for (int un : U.word_units[i]) ++load[un];
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> greedy_on_universe(const Universe& U, long long lambda, const SearchConfig& cfg,
                                    std::vector<std::string>* trace) {
  const int N = static_cast<int>(U.word_units.size());
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best = greedy_pass(U, lambda, order);
  if (trace)
    trace->push_back("greedy canonical pass: size " + std::to_string(best.size()));
  for (int r = 1; r <= cfg.restarts; ++r) {
    std::vector<int> ord = order;
    det_shuffle(ord, cfg.seed + static_cast<std::uint64_t>(r));
    std::vector<int> got = greedy_pass(U, lambda, ord);
    if (trace)
      trace->push_back("greedy seeded pass " + std::to_string(r) + ": size " +
                       std::to_string(got.size()));
    if (got.size() > best.size()) best = std::move(got);
  }
  return best;
}

GrassCode code_from_indices(const Universe& U, const std::vector<int>& idx) {
  GrassCode code(U.ctx, U.n, U.k);
  for (int i : idx) code.add(U.words[i]);
  return code;
}

void revalidate_multiple(const GrassCode& code, int t, long long lambda, long long enum_budget) {
  ValidityReport rep = check_multiple(code, t, lambda, enum_budget);
  if (!rep.valid)
    throw std::logic_error("search produced a code the independent checker rejects");
}

}  // namespace

SearchResult greedy_max_multiple(int q, int n, int k, int t, long long lambda,
                                 const SearchConfig& cfg) {
  validate_multiple_params(n, k, t, lambda);
  Universe U = build_universe(q, n, k, t, cfg.enum_budget);
  SearchResult out;
  std::vector<int> best = greedy_on_universe(U, lambda, cfg, &out.trace);
  out.code = code_from_indices(U, best);
  out.size = out.code.size();
  out.optimal = false;
  out.trace.push_back("greedy best: size " + std::to_string(out.size));
  revalidate_multiple(out.code, t, lambda, cfg.enum_budget);
  return out;
}

SearchResult exact_max_multiple(int q, int n, int k, int t, long long lambda,
                                const SearchConfig& cfg) {
  validate_multiple_params(n, k, t, lambda);
  FieldCtx F = make_field(q);
  SearchResult out;
  BigInt lc = lambda_complete(n, k, t, q);
  if (BigInt(lambda) >= lc) {
    auto all = enumerate_grassmannian(F, n, k, cfg.enum_budget);
    out.code = GrassCode(F, n, k);
    for (const auto& w : all) out.code.add(w);
    out.size = out.code.size();
    out.optimal = true;
    out.trace.push_back("lambda >= " + lc.str() +
                        ": the complete Grassmannian is a valid code and no simple code is "
                        "larger");
    revalidate_multiple(out.code, t, lambda, cfg.enum_budget);
    return out;
  }

  Universe U = build_universe(q, n, k, t, cfg.enum_budget);
  out.trace.push_back("universe: " + std::to_string(U.words.size()) + " candidate words, " +
                      std::to_string(U.units.size()) + " t-subspaces");
  std::vector<int> seed = greedy_on_universe(U, lambda, cfg, &out.trace);

  BoundEngine eng(q);  // formula bounds only; stored values are not certificates here
  BoundEntry ub = eng.upper_multiple(n, k, t, lambda);
  out.trace.push_back("upper bound " + ub.value.str() + " via " + ub.rule);

  PackingInstance inst;
  inst.unit_count = static_cast<int>(U.units.size());
  inst.lambda = lambda;
  inst.item_units = U.word_units;
  PackingOptions opt;
  opt.budget.node_budget = cfg.node_budget;
  opt.budget.time_budget_s = cfg.time_budget_s;
  opt.seed = seed;
  opt.upper_cap = ub.value;
  // The ambient linear group is transitive on words and preserves loads, so
  // some optimum contains word 0 and the root can be fixed.
  if (!U.words.empty()) opt.root_fix = {0};
  PackingResult res = max_packing(inst, opt);

  out.code = code_from_indices(U, res.chosen);
  out.size = out.code.size();
  out.optimal = res.optimal;
  out.explored = res.explored;
  out.budget_hit = res.budget_hit;
  out.trace.push_back("branch and bound: " + std::to_string(res.explored) + " nodes, size " +
                      std::to_string(out.size) +
                      (res.optimal ? " (optimal)" : " (budget hit, incumbent only)"));
  revalidate_multiple(out.code, t, lambda, cfg.enum_budget);
  return out;
}

SearchResult exact_max_multiple_repeats(int q, int n, int k, int t, long long lambda,
                                        const SearchConfig& cfg) {
  validate_multiple_params(n, k, t, lambda);
  Universe U = build_universe(q, n, k, t, cfg.enum_budget);
  const long long nwords = static_cast<long long>(U.words.size());
  BigInt item_count = BigInt(nwords) * lambda;
  if (item_count > 2'000'000)
    throw BudgetExceeded("multiset search instance too large", item_count.str());
  const long long per = lambda;  // copies available per word

  SearchResult out;
  out.trace.push_back("universe: " + std::to_string(U.words.size()) + " candidate words, " +
                      std::to_string(U.units.size()) + " t-subspaces, multiplicity up to " +
                      std::to_string(lambda));

  PackingInstance inst;
  inst.unit_count = static_cast<int>(U.units.size());
  inst.lambda = lambda;
  inst.item_units.reserve(static_cast<std::size_t>(nwords * per));
  for (long long i = 0; i < nwords; ++i)
    for (long long c = 0; c < per; ++c) inst.item_units.push_back(U.word_units[i]);

  // Seed: as many full copies of the Grassmannian as fit, then a simple
  // greedy code on the leftover multiplicity.
  std::vector<int> seed;
  long long d = 0, rem = lambda;
  if (auto lc = to_ll(lambda_complete(n, k, t, q)); lc && *lc <= lambda) {
    d = lambda / *lc;
    rem = lambda - d * *lc;
  }
  std::vector<long long> mult(nwords, d);
  if (rem >= 1) {
    SearchConfig gcfg = cfg;
    for (int i : greedy_on_universe(U, rem, gcfg, nullptr)) ++mult[i];
  }
  for (long long i = 0; i < nwords; ++i)
    for (long long c = 0; c < mult[i]; ++c) seed.push_back(static_cast<int>(i * per + c));
  out.trace.push_back("seed: " + std::to_string(seed.size()) + " slots (" + std::to_string(d) +
                      " full copies plus a greedy layer)");

  BoundEngine eng(q);
  BoundEntry ub = eng.upper_multiple(n, k, t, lambda, true);
  out.trace.push_back("upper bound " + ub.value.str() + " via " + ub.rule);

  PackingOptions opt;
  opt.budget.node_budget = cfg.node_budget;
  opt.budget.time_budget_s = cfg.time_budget_s;
  opt.seed = seed;
  opt.upper_cap = ub.value;
  if (nwords > 0) opt.root_fix = {0};
  PackingResult res = max_packing(inst, opt);

  GrassCode code(U.ctx, n, k);
  std::vector<long long> got(nwords, 0);
  for (int id : res.chosen) ++got[id / per];
  for (long long i = 0; i < nwords; ++i)
    if (got[i] > 0) code.add(U.words[i], got[i]);
  out.code = std::move(code);
  out.size = out.code.size();
  out.optimal = res.optimal;
  out.explored = res.explored;
  out.budget_hit = res.budget_hit;
  out.trace.push_back("branch and bound: " + std::to_string(res.explored) + " nodes, size " +
                      std::to_string(out.size) +
                      (res.optimal ? " (optimal)" : " (budget hit, incumbent only)"));
  revalidate_multiple(out.code, t, lambda, cfg.enum_budget);
  return out;
}

SearchResult exact_min_cover(int q, int n, int k, int t, long long lambda,
                             const SearchConfig& cfg) {
  if (lambda < 0) throw InvalidArgs("lambda must be >= 0");
  validate_multiple_params(n, k, t, std::max<long long>(lambda, 1));
  FieldCtx F = make_field(q);
  SearchResult out;
  if (lambda == 0) {
    out.code = GrassCode(F, n, k);
    out.optimal = true;
    out.trace.push_back("lambda = 0: the empty code covers vacuously");
    return out;
  }
  BigInt lc = lambda_complete(n, k, t, q);
  if (BigInt(lambda) > lc)
    throw InvalidArgs("no simple code covers beyond the complete multiplicity " + lc.str());

  Universe U = build_universe(q, n, k, t, cfg.enum_budget);
  out.trace.push_back("universe: " + std::to_string(U.words.size()) + " candidate words, " +
                      std::to_string(U.units.size()) + " t-subspaces");

  // Greedy cover seed: take the word fixing the most still-deficient units.
  std::vector<int> seed;
  {
    std::vector<long long> load(U.units.size(), 0);
    std::vector<char> in(U.word_units.size(), 0);
    long long deficient = static_cast<long long>(U.units.size());
    auto def = [&](int u) { return load[u] < lambda; };
    while (deficient > 0) {
      int best = -1;
      long long bgain = -1;
      for (int i = 0; i < static_cast<int>(U.word_units.size()); ++i) {
        if (in[i]) continue;
        long long gain = 0;
        for (int u : U.word_units[i])
          if (def(u) && load[u] + 1 == lambda) ++gain;
        long long touch = 0;
        for (int u : U.word_units[i])
          if (def(u)) ++touch;
        // Prefer finishing units, then touching many deficient ones.
        long long score = (gain << 20) + touch;
        if (score > bgain) {
          bgain = score;
          best = i;
        }
      }
      if (best < 0) throw std::logic_error("greedy cover ran out of words");
      in[best] = 1;
      seed.push_back(best);
      for (int u : U.word_units[best]) {
        ++load[u];
        if (load[u] == lambda) --deficient;
      }
    }
    std::sort(seed.begin(), seed.end());
  }
  out.trace.push_back("greedy cover seed: size " + std::to_string(seed.size()));

  // Any cover grants lambda slots on each t-subspace while a word grants
  // [k t]_q of them.
  BigInt num = BigInt(lambda) * gaussian_binomial(n, t, q);
  BigInt den = gaussian_binomial(k, t, q);
  BigInt lower = (num + den - 1) / den;
  out.trace.push_back("covering lower bound " + lower.str());

  PackingInstance inst;
  inst.unit_count = static_cast<int>(U.units.size());
  inst.lambda = lambda;
  inst.item_units = U.word_units;
  CoverOptions opt;
  opt.budget.node_budget = cfg.node_budget;
  opt.budget.time_budget_s = cfg.time_budget_s;
  opt.seed = seed;
  opt.lower_cap = lower;
  if (!U.words.empty()) opt.root_fix = {0};
  CoverResult res = min_cover(inst, opt);
  if (!res.feasible) throw std::logic_error("cover search lost its feasible incumbent");

  out.code = code_from_indices(U, res.chosen);
  out.size = out.code.size();
  out.optimal = res.optimal;
  out.explored = res.explored;
  out.budget_hit = res.budget_hit;
  out.trace.push_back("branch and bound: " + std::to_string(res.explored) + " nodes, size " +
                      std::to_string(out.size) +
                      (res.optimal ? " (optimal)" : " (budget hit, incumbent only)"));

  // Independent recount through subspace containment.
  if (BigInt(out.size) * static_cast<long long>(U.units.size()) <= 200'000) {
    for (const auto& un : U.units) {
      long long cnt = 0;
      for (const auto& [w, m] : out.code.words())
        if (w.contains(un)) cnt += m;
      if (cnt < lambda) throw std::logic_error("cover certificate fails the recount");
    }
    out.trace.push_back("certificate recount passed");
  }
  return out;
}

namespace {

void validate_covering_params(int n, int k, int delta, long long alpha) {
  if (n < 1 || k < 1 || k >= n) throw InvalidArgs("need 1 <= k < n");
  if (delta < 1 || delta > n - k) throw InvalidArgs("need 1 <= delta <= n-k");
  if (alpha < 2)
    throw InvalidArgs("alpha must be >= 2 (a single codeword can never span dim k + delta)");
}

SearchResult finish_covering(SearchResult inner, int n, int k, int delta, long long alpha) {
  SearchResult out;
  out.code = dualize(inner.code);
  out.size = out.code.size();
  out.optimal = inner.optimal;
  out.explored = inner.explored;
  out.budget_hit = inner.budget_hit;
  out.trace.push_back("covering problem solved as the multiple-code problem (" +
                      std::to_string(n) + "," + std::to_string(n - k) + "," +
                      std::to_string(n - k - delta + 1) + ";" + std::to_string(alpha - 1) +
                      ") on orthogonal complements");
  out.trace.insert(out.trace.end(), inner.trace.begin(), inner.trace.end());
  ValidityReport rep = check_covering(out.code, alpha, delta);
  if (!rep.valid) throw std::logic_error("dualized certificate fails the covering checker");
  if (rep.vacuous)
    out.trace.push_back("certificate is smaller than alpha; the covering condition is vacuous");
  else
    out.trace.push_back("certificate revalidated by the covering checker");
  return out;
}

}  // namespace

SearchResult greedy_max_covering(int q, int n, int k, int delta, long long alpha,
                                 const SearchConfig& cfg) {
  validate_covering_params(n, k, delta, alpha);
  return finish_covering(greedy_max_multiple(q, n, n - k, n - k - delta + 1, alpha - 1, cfg), n,
                         k, delta, alpha);
}

SearchResult exact_max_covering(int q, int n, int k, int delta, long long alpha,
                                const SearchConfig& cfg) {
  validate_covering_params(n, k, delta, alpha);
  return finish_covering(exact_max_multiple(q, n, n - k, n - k - delta + 1, alpha - 1, cfg), n,
                         k, delta, alpha);
}

SearchResult exact_max_covering_repeats(int q, int n, int k, int delta, long long alpha,
                                        const SearchConfig& cfg) {
  validate_covering_params(n, k, delta, alpha);
  return finish_covering(
      exact_max_multiple_repeats(q, n, n - k, n - k - delta + 1, alpha - 1, cfg), n, k, delta,
      alpha);
}

namespace {

// Monic irreducible of degree k over F, smallest coefficient encoding first.
std::vector<Fq> find_irreducible(const FieldCtx& F, int k) {
  const int q = F.q();
  std::vector<Fq> c(k, 0);
  auto reducible = [&]() {
    // f = x^k + sum c_i x^i; trial division by every monic g of degree
    // 1..k/2.
    for (int d = 1; d * 2 <= k; ++d) {
      std::vector<Fq> g(d, 0);  // + monic leading term
      for (;;) {
        std::vector<Fq> rem(k + 1, 0);
        for (int i = 0; i < k; ++i) rem[i] = c[i];
        rem[k] = 1;
        for (int deg = k; deg >= d; --deg) {
          Fq coef = rem[deg];
          if (coef == 0) continue;
          rem[deg] = 0;
          for (int j = 0; j < d; ++j)
            rem[deg - d + j] = F.sub(rem[deg - d + j], F.mul(coef, g[j]));
        }
        bool zero = true;
        for (int j = 0; j < d; ++j)
          if (rem[j] != 0) zero = false;
        if (zero) return true;
        int pos = 0;
        while (pos < d && g[pos] == q - 1) g[pos++] = 0;
        if (pos == d) break;
        ++g[pos];
      }
    }
    return false;
  };
  for (;;) {
    if (!reducible()) return c;
    int pos = 0;
    while (pos < k && c[pos] == q - 1) c[pos++] = 0;
    if (pos == k) throw std::logic_error("no monic irreducible of the requested degree");
    ++c[pos];
  }
}

}  // namespace

GrassCode spread_construct(int q, int n, int k, long long budget) {
  FieldCtx F = make_field(q);
  if (n < 1 || k < 1 || k > n) throw InvalidArgs("need 1 <= k <= n");
  if (n % k != 0) throw NotDivisible("a spread of k-subspaces needs k | n");
  BigInt count = (boost::multiprecision::pow(BigInt(q), n) - 1) /
                 (boost::multiprecision::pow(BigInt(q), k) - 1);
  if (count > budget)
    throw BudgetExceeded("spread would have " + count.str() + " words", count.str());

  GrassCode code(F, n, k);
  if (k == n) {
    code.add(Subspace::from_rref(MatrixFq::identity(F, n)));
    return code;
  }
  const int m = n / k;
  long long qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;  // <= count <= budget since m >= 2

  std::vector<Fq> f = find_irreducible(F, k);
  // Right-multiplication by x on row-vector coefficient representations.
  MatrixFq M(F, k, k);
  for (int i = 0; i + 1 < k; ++i) M.set(i, i + 1, 1);
  for (int j = 0; j < k; ++j) M.set(k - 1, j, F.neg(f[j]));
  std::vector<MatrixFq> P;
  P.push_back(MatrixFq::identity(F, k));
  for (int j = 1; j < k; ++j) P.push_back(mat_mul(P.back(), M));

  auto elem_mat = [&](long long e) {
    MatrixFq A(F, k, k);
    long long v = e;
    for (int j = 0; j < k && v != 0; ++j, v /= q) {
      Fq d = static_cast<Fq>(v % q);
      if (d == 0) continue;
      for (int r = 0; r < k; ++r)
        for (int cc = 0; cc < k; ++cc) A.set(r, cc, F.add(A.at(r, cc), F.mul(d, P[j].at(r, cc))));
    }
    return A;
  };

  // One word per point of the projective line/space over the big field:
  // leading coordinate normalized to one, free coordinates swept in order.
  for (int lead = 0; lead < m; ++lead) {
    const int freec = m - 1 - lead;
    std::vector<long long> coord(freec, 0);
    for (;;) {
      MatrixFq W(F, k, n);
      for (int r = 0; r < k; ++r) W.set(r, lead * k + r, 1);
      for (int j = 0; j < freec; ++j) {
        MatrixFq A = elem_mat(coord[j]);
        int col0 = (lead + 1 + j) * k;
        for (int r = 0; r < k; ++r)
          for (int cc = 0; cc < k; ++cc) W.set(r, col0 + cc, A.at(r, cc));
      }
      code.add(Subspace::from_matrix(W));
      int pos = freec - 1;
      while (pos >= 0 && coord[pos] == qk - 1) coord[pos--] = 0;
      if (pos < 0) break;
      ++coord[pos];
    }
  }
  if (BigInt(code.size()) != count || code.distinct_count() != code.size())
    throw std::logic_error("spread construction produced a wrong word count");
  return code;
}

}  // namespace grasscov
