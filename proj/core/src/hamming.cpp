#include "grasscov/hamming.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "grasscov/errors.hpp"
#include "grasscov/grassmann.hpp"

namespace grasscov {

namespace {

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  BigInt v = 1;
  for (long long i = 0; i < k; ++i) {
    v *= (n - i);
    v /= (i + 1);
  }
  return v;
}

// Lexicographic k-subsets of [0, n).
bool next_subset(std::vector<int>& s, int n) {
  int a = static_cast<int>(s.size());
  int i = a - 1;
  while (i >= 0 && s[i] == n - a + i) --i;
  if (i < 0) return false;
  ++s[i];
  for (int j = i + 1; j < a; ++j) s[j] = s[j - 1] + 1;
  return true;
}

std::vector<int> first_subset(int k) {
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  return s;
}

}  // namespace

LinearCode::LinearCode(MatrixFq generator) : gen_(std::move(generator)) {
  if (gen_.rows() < 1 || gen_.cols() < 1)
    throw InvalidArgs("generator must have at least one row and one column");
  if (rank_of(gen_) != gen_.rows())
    throw RankDeficient("generator must have full row rank");
}

std::vector<std::vector<Fq>> codewords(const LinearCode& c, long long budget) {
  const FieldCtx& F = c.ctx();
  const MatrixFq& G = c.generator();
  const int h = c.dimension();
  const int len = c.length();
  BigInt total = 1;
  for (int i = 0; i < h; ++i) total *= F.q();
  if (total > budget)
    throw BudgetExceeded("codeword enumeration needs q^h <= " + std::to_string(budget),
                         total.str());
  long long count = total.convert_to<long long>();

  std::vector<std::vector<Fq>> words;
  words.reserve(static_cast<std::size_t>(count));
  std::vector<Fq> x(h, 0);
  for (long long idx = 0; idx < count; ++idx) {
    long long v = idx;
    for (int i = 0; i < h; ++i, v /= F.q()) x[i] = static_cast<Fq>(v % F.q());
    std::vector<Fq> w(len, 0);
    for (int j = 0; j < len; ++j) {
      Fq acc = 0;
      for (int i = 0; i < h; ++i) acc = F.add(acc, F.mul(x[i], G.at(i, j)));
      w[j] = acc;
    }
    words.push_back(std::move(w));
  }
  return words;
}

int min_hamming_distance(const LinearCode& c, long long budget) {
  auto words = codewords(c, budget);
  int best = c.length() + 1;
  for (std::size_t i = 1; i < words.size(); ++i) {
    int w = 0;
    for (Fq v : words[i]) w += (v != 0);
    best = std::min(best, w);
  }
  return best;
}

GrassCode generator_to_grasscode(const MatrixFq& G) {
  const int h = G.rows();
  const int r = G.cols();
  if (h < 1 || r < 1) throw InvalidArgs("generator must have at least one row and one column");
  if (rank_of(G) != h) throw RankDeficient("generator must have full row rank");
  GrassCode code(G.ctx(), h, 1);
  for (int j = 0; j < r; ++j) {
    MatrixFq col(G.ctx(), 1, h);
    bool zero = true;
    for (int i = 0; i < h; ++i) {
      col.set(0, i, G.at(i, j));
      zero = zero && G.at(i, j) == 0;
    }
    if (zero) throw ZeroColumn("generator column " + std::to_string(j) + " is zero");
    code.add(Subspace::from_matrix(col));
  }
  return code;
}

GrassCode parity_to_covering(const MatrixFq& H, int d, long long budget) {
  const int m = H.rows();
  const int r = H.cols();
  if (m < 1 || r < 1) throw InvalidArgs("parity matrix must have at least one row and column");
  if (d < 2) throw InvalidArgs("need a designed distance d >= 2");

  const int w = d - 1;
  if (w <= r) {
    if (binomial(r, w) > budget)
      throw BudgetExceeded("too many column subsets to verify", binomial(r, w).str());
    std::vector<int> cols = first_subset(w);
    do {
      MatrixFq sub(H.ctx(), w, m);
      for (int i = 0; i < w; ++i)
        for (int row = 0; row < m; ++row) sub.set(i, row, H.at(row, cols[i]));
      if (rank_of(sub) != w)
        throw IndependenceViolated("these parity-check columns are linearly dependent", cols);
    } while (next_subset(cols, r));
  }

  GrassCode code(H.ctx(), m, 1);
  for (int j = 0; j < r; ++j) {
    MatrixFq col(H.ctx(), 1, m);
    for (int i = 0; i < m; ++i) col.set(0, i, H.at(i, j));
    code.add(Subspace::from_matrix(col));
  }
  return code;
}

SetPacking make_set_packing(int n, int k, std::vector<std::vector<int>> blocks) {
  if (n < 1 || k < 1 || k > n) throw InvalidArgs("need 1 <= k <= n");
  std::set<std::vector<int>> seen;
  for (auto& b : blocks) {
    if (static_cast<int>(b.size()) != k)
      throw InvalidArgs("every block must have exactly k elements");
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] < 1 || b[i] > n) throw InvalidArgs("block element outside {1..n}");
      if (i > 0 && b[i] == b[i - 1]) throw InvalidArgs("block repeats an element");
    }
    if (!seen.insert(b).second) throw NotSimple("repeated block");
  }
  SetPacking p;
  p.n = n;
  p.k = k;
  p.blocks = std::move(blocks);
  return p;
}

SetPackingReport set_packing_check(const SetPacking& p, int t, long long lambda) {
  if (t < 1 || t > p.k) throw InvalidArgs("need 1 <= t <= k");
  if (lambda < 0) throw InvalidArgs("lambda must be >= 0");

  // Load of every t-subset that appears in some block, in lex order.
  std::map<std::vector<int>, std::vector<int>> loads;
  for (std::size_t bi = 0; bi < p.blocks.size(); ++bi) {
    const auto& b = p.blocks[bi];
    std::vector<int> pick = first_subset(t);
    do {
      std::vector<int> ts(t);
      for (int i = 0; i < t; ++i) ts[i] = b[pick[i]];
      loads[ts].push_back(static_cast<int>(bi));
    } while (next_subset(pick, p.k));
  }

  SetPackingReport rep;
  for (const auto& [ts, holders] : loads) {
    long long load = static_cast<long long>(holders.size());
    rep.max_load = std::max(rep.max_load, load);
    if (rep.valid && load > lambda) {
      rep.valid = false;
      rep.t_subset = ts;
      rep.block_indices = holders;
    }
  }
  return rep;
}

std::array<long long, 3> turan_values(long long n) {
  if (n < 4) throw InvalidArgs("closed forms need n >= 4");
  return {n / 2, (n * n) / 4, n * (n - 1) / 2};
}

SetPackingSearchResult max_set_packing(int n, int k, int t, long long lambda,
                                       const SearchBudget& budget) {
  if (n < 1 || k < 1 || k > n || t < 1 || t > k) throw InvalidArgs("need 1 <= t <= k <= n");
  if (lambda < 1) throw InvalidArgs("lambda must be >= 1");
  BigInt item_count = binomial(n, k);
  BigInt unit_count = binomial(n, t);
  if (item_count > 2'000'000 || unit_count > 2'000'000)
    throw BudgetExceeded("set packing instance too large",
                         BigInt(item_count + unit_count).str());

  // Units: lex t-subsets of [0, n).
  std::map<std::vector<int>, int> unit_index;
  {
    std::vector<int> ts = first_subset(t);
    int id = 0;
    do {
      unit_index[ts] = id++;
    } while (next_subset(ts, n));
  }

  // Items: lex k-subsets of [0, n).
  PackingInstance inst;
  inst.unit_count = static_cast<int>(unit_index.size());
  inst.lambda = lambda;
  std::vector<std::vector<int>> item_sets;
  {
    std::vector<int> ks = first_subset(k);
    do {
      std::vector<int> units;
      std::vector<int> pick = first_subset(t);
      do {
        std::vector<int> ts(t);
        for (int i = 0; i < t; ++i) ts[i] = ks[pick[i]];
        units.push_back(unit_index.at(ts));
      } while (next_subset(pick, k));
      std::sort(units.begin(), units.end());
      inst.item_units.push_back(std::move(units));
      item_sets.push_back(ks);
    } while (next_subset(ks, n));
  }

  PackingOptions opts;
  opts.budget = budget;
  opts.upper_cap = (BigInt(lambda) * unit_count) / binomial(k, t);
  // Relabeling the ground set carries any maximum packing onto one that
  // contains the lex-first block.
  opts.root_fix = {0};
  PackingResult pr = max_packing(inst, opts);

  SetPackingSearchResult out;
  std::vector<std::vector<int>> blocks;
  for (int id : pr.chosen) {
    std::vector<int> b = item_sets[static_cast<std::size_t>(id)];
    for (int& v : b) ++v;  // 1-based ground set
    blocks.push_back(std::move(b));
  }
  out.packing = make_set_packing(n, k, std::move(blocks));
  out.optimal = pr.optimal;
  out.explored = pr.explored;
  out.budget_hit = pr.budget_hit;
  return out;
}

std::vector<int> generalized_weights(const LinearCode& c, long long budget) {
  const FieldCtx& F = c.ctx();
  const MatrixFq& G = c.generator();
  const int h = c.dimension();
  const int len = c.length();

  std::vector<int> d;
  for (int r = 1; r <= h; ++r) {
    auto subs = enumerate_grassmannian(F, h, r, budget);
    int best = len + 1;
    for (const Subspace& s : subs) {
      MatrixFq rows = mat_mul(s.basis(), G);
      int support = 0;
      for (int j = 0; j < len; ++j) {
        bool hit = false;
        for (int i = 0; i < r && !hit; ++i) hit = rows.at(i, j) != 0;
        support += hit;
      }
      best = std::min(best, support);
    }
    d.push_back(best);
  }
  return d;
}

namespace {

struct UnionSupportDfs {
  const std::vector<std::uint64_t>& masks;
  int best;
  void run(int idx, int left, std::uint64_t mask) {
    int pc = std::popcount(mask);
    if (pc >= best) return;  // the union never shrinks
    if (left == 0) {
      best = pc;
      return;
    }
    const int M = static_cast<int>(masks.size());
    for (int i = idx; i + left <= M; ++i) run(i + 1, left - 1, mask | masks[i]);
  }
};

}  // namespace

std::vector<int> covering_hierarchy(const LinearCode& c, int alpha_max, long long budget) {
  if (c.length() > 64) throw Unsupported("codeword supports longer than 64 coordinates");
  auto words = codewords(c, 1 << 20);
  const long long M = static_cast<long long>(words.size()) - 1;  // nonzero codewords
  if (alpha_max < 1 || alpha_max > M)
    throw InvalidArgs("need 1 <= alpha_max <= number of nonzero codewords");

  BigInt subsets = 0;
  for (int a = 1; a <= alpha_max; ++a) subsets += binomial(M, a);
  if (subsets > budget)
    throw BudgetExceeded("too many codeword subsets to scan", subsets.str());

  std::vector<std::uint64_t> masks;
  masks.reserve(static_cast<std::size_t>(M));
  for (std::size_t i = 1; i < words.size(); ++i) {
    std::uint64_t m = 0;
    for (int j = 0; j < c.length(); ++j)
      if (words[i][static_cast<std::size_t>(j)] != 0) m |= std::uint64_t{1} << j;
    masks.push_back(m);
  }

  std::vector<int> hierarchy;
  for (int a = 1; a <= alpha_max; ++a) {
    UnionSupportDfs dfs{masks, c.length() + 1};
    dfs.run(0, a, 0);
    // best = len + 1 never survives: any a-subset has union <= len
    hierarchy.push_back(std::min(dfs.best, c.length()));
  }
  return hierarchy;
}

}  // namespace grasscov
