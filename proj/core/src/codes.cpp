#include "grasscov/codes.hpp"

#include <algorithm>
#include <stdexcept>

namespace grasscov {

GrassCode::GrassCode(FieldCtx ctx, int n, int k) : ctx_(std::move(ctx)), n_(n), k_(k) {
  if (n < 0 || k < 0 || k > n) throw InvalidArgs("GrassCode needs 0 <= k <= n");
}

void GrassCode::add(const Subspace& s, long long mult) {
  if (mult < 1) throw InvalidArgs("multiplicity must be >= 1");
  if (s.n() != n_ || s.dim() != k_)
    throw DimensionMismatch("codeword does not live in G_q(n, k) of this code");
  if (s.ctx() != ctx_) throw DimensionMismatch("codeword field mismatch");
  auto it = index_.find(s);
  if (it == index_.end()) {
    index_.emplace(s, static_cast<int>(words_.size()));
    words_.emplace_back(s, mult);
  } else {
    words_[it->second].second += mult;
  }
  size_ += mult;
}

bool GrassCode::simple() const {
  for (const auto& [w, m] : words_)
    if (m != 1) return false;
  return true;
}

long long GrassCode::multiplicity_of(const Subspace& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? 0 : words_[it->second].second;
}

bool GrassCode::operator==(const GrassCode& other) const {
  // multiset equality: insertion order is not part of the code's identity
  if (n_ != other.n_ || k_ != other.k_ || words_.size() != other.words_.size()) return false;
  for (const auto& [w, mult] : words_)
    if (other.multiplicity_of(w) != mult) return false;
  return true;
}

namespace {

// Depth-first scan over supports: sets S of distinct codewords with
// |S| <= alpha <= total multiplicity of S. These are exactly the supports of
// alpha-element multisubsets, and the span depends only on the support.
// Visits supports in lexicographic index order, prunes once the partial span
// dimension reaches `prune_at`, and stops the whole scan once a support with
// span dimension < `stop_below` is recorded.
struct SupportScan {
  const GrassCode& code;
  long long alpha;
  int prune_at;    // subtree useless at or above this dimension
  int stop_below;  // any hit below this dimension ends the scan
  std::vector<long long> suffix_mult;

  int best_dim;
  std::vector<int> best_support;
  bool stopped = false;

  SupportScan(const GrassCode& c, long long a, int prune, int stop)
      : code(c), alpha(a), prune_at(prune), stop_below(stop), best_dim(prune) {
    const auto& w = code.words();
    suffix_mult.assign(w.size() + 1, 0);
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
      suffix_mult[i] = suffix_mult[i + 1] + w[i].second;
  }

  void run() {
    std::vector<int> chosen;
    SpanAcc span(code.ctx(), code.n());
    dfs(0, 0, chosen, span);
  }

  void dfs(int i, long long mult_sum, std::vector<int>& chosen, const SpanAcc& span) {
    if (stopped) return;
    if (!chosen.empty() && mult_sum >= alpha && span.rank() < best_dim) {
      best_dim = span.rank();
      best_support = chosen;
      if (best_dim < stop_below) {
        stopped = true;
        return;
      }
    }
    if (static_cast<long long>(chosen.size()) >= alpha) return;
    if (i >= code.distinct_count()) return;
    if (mult_sum + suffix_mult[i] < alpha) return;  // cannot reach alpha slots

    // Include word i. Dimensions only grow, so a partial span at or above
    // both thresholds can be cut.
    {
      SpanAcc next = span;
      next.add_matrix(code.words()[i].first.basis());
      if (next.rank() < prune_at && next.rank() < best_dim) {
        chosen.push_back(i);
        dfs(i + 1, mult_sum + code.words()[i].second, chosen, next);
        chosen.pop_back();
        if (stopped) return;
      }
    }
    // Skip word i.
    dfs(i + 1, mult_sum, chosen, span);
  }
};

}  // namespace

static std::pair<int, std::vector<int>> min_alpha_span_impl(const GrassCode& code,
                                                            long long alpha) {
  // No violation threshold: track the best seen. A support always spans at
  // least k, so anything reaching k ends the scan.
  SupportScan scan(code, alpha, code.n() + 1, code.k() + 1);
  scan.run();
  return {scan.best_dim, scan.best_support};
}

static std::vector<int> expand_slots(const GrassCode& code, const std::vector<int>& support,
                                     long long alpha) {
  // Turn a support into alpha slots: one slot each, then fill from the front
  // up to each multiplicity.
  std::vector<long long> take(support.size(), 1);
  long long rest = alpha - static_cast<long long>(support.size());
  for (size_t i = 0; i < support.size() && rest > 0; ++i) {
    long long extra = std::min(rest, code.words()[support[i]].second - 1);
    take[i] += extra;
    rest -= extra;
  }
  std::vector<int> slots;
  slots.reserve(static_cast<size_t>(alpha));
  for (size_t i = 0; i < support.size(); ++i)
    for (long long c = 0; c < take[i]; ++c) slots.push_back(support[i]);
  return slots;
}

int min_alpha_span(const GrassCode& code, long long alpha) {
  if (alpha < 1) throw InvalidArgs("alpha must be >= 1");
  if (code.size() < alpha) throw TooFewCodewords("code smaller than alpha");
  return min_alpha_span_impl(code, alpha).first;
}

ValidityReport check_covering(const GrassCode& code, long long alpha, int delta) {
  if (alpha < 1) throw InvalidArgs("alpha must be >= 1");
  if (delta < 1) throw InvalidArgs("delta must be >= 1");
  ValidityReport rep;
  rep.degenerate_alpha = (alpha == 1);
  if (code.size() < alpha) {
    rep.valid = true;
    rep.vacuous = true;
    return rep;
  }
  int need = delta + code.k();
  // Any support spanning below `need` is a violation; scan stops at the first
  // one in canonical order.
  SupportScan scan(code, alpha, need, need);
  scan.run();
  if (scan.best_dim < need) {
    rep.valid = false;
    CoveringWitness w;
    w.slots = expand_slots(code, scan.best_support, alpha);
    w.span_dim = scan.best_dim;
    rep.covering_witness = std::move(w);
  } else {
    rep.valid = true;
  }
  return rep;
}

namespace {

struct LoadTable {
  std::vector<Subspace> tsubs;                       // first-seen order
  std::vector<long long> load;
  std::vector<std::vector<int>> holders;             // word indices
  std::unordered_map<Subspace, int, SubspaceHash> idx;

  void account(const Subspace& t, int word, long long mult) {
    auto it = idx.find(t);
    int at;
    if (it == idx.end()) {
      at = static_cast<int>(tsubs.size());
      idx.emplace(t, at);
      tsubs.push_back(t);
      load.push_back(0);
      holders.emplace_back();
    } else {
      at = it->second;
    }
    load[at] += mult;
    holders[at].push_back(word);
  }
};

LoadTable build_load_table(const GrassCode& code, int t, long long enum_budget) {
  if (t < 0 || t > code.k()) throw InvalidArgs("need 0 <= t <= k");
  LoadTable table;
  if (code.distinct_count() == 0) return table;
  // t-subspaces of one codeword: push the t-subspaces of its internal
  // coordinate space F_q^k through the basis into the ambient space.
  std::vector<Subspace> local = enumerate_grassmannian(code.ctx(), code.k(), t, enum_budget);
  for (int wi = 0; wi < code.distinct_count(); ++wi) {
    const auto& [word, mult] = code.words()[wi];
    for (const Subspace& ts : local) {
      MatrixFq ambient = mat_mul(ts.basis(), word.basis());
      table.account(Subspace::from_matrix(ambient), wi, mult);
    }
  }
  return table;
}

}  // namespace

LoadReport tsubspace_load_report(const GrassCode& code, int t, long long enum_budget) {
  LoadTable table = build_load_table(code, t, enum_budget);
  LoadReport rep;
  for (size_t i = 0; i < table.load.size(); ++i) {
    if (table.load[i] > rep.max_load) {
      rep.max_load = table.load[i];
      rep.argmax = table.tsubs[i];
      rep.holders = table.holders[i];
    }
  }
  return rep;
}

long long max_tsubspace_load(const GrassCode& code, int t, long long enum_budget) {
  return tsubspace_load_report(code, t, enum_budget).max_load;
}

ValidityReport check_multiple(const GrassCode& code, int t, long long lambda,
                              long long enum_budget) {
  if (lambda < 1) throw InvalidArgs("lambda must be >= 1");
  LoadTable table = build_load_table(code, t, enum_budget);
  ValidityReport rep;
  int worst = -1;
  long long worst_load = lambda;  // only interested in loads beyond lambda
  for (size_t i = 0; i < table.load.size(); ++i) {
    if (table.load[i] > worst_load) {
      worst_load = table.load[i];
      worst = static_cast<int>(i);
      break;  // first overloaded t-subspace in first-seen order
    }
  }
  if (worst < 0) {
    rep.valid = true;
    return rep;
  }
  rep.valid = false;
  MultipleWitness w;
  w.t_subspace = table.tsubs[worst];
  w.word_indices = table.holders[worst];
  w.load = table.load[worst];
  rep.multiple_witness = std::move(w);
  return rep;
}

int min_distance(const GrassCode& code) {
  if (!code.simple()) throw NotSimple("minimum distance needs a simple code");
  if (code.distinct_count() < 2) throw TooFewCodewords("minimum distance needs two codewords");
  int best = code.k() + 1;
  for (int i = 0; i < code.distinct_count(); ++i)
    for (int j = i + 1; j < code.distinct_count(); ++j)
      best = std::min(best, grassmann_distance(code.words()[i].first, code.words()[j].first));
  // The same quantity through the covering lens; disagreement is a bug.
  int via_span = min_alpha_span(code, 2) - code.k();
  if (via_span != best) throw std::logic_error("min_distance cross-check failed");
  return best;
}

GrassCode dualize(const GrassCode& code) {
  GrassCode dual(code.ctx(), code.n(), code.n() - code.k());
  for (const auto& [w, m] : code.words()) dual.add(orthogonal_complement(w), m);
  return dual;
}

GrassCode complement(const GrassCode& code, long long enum_budget) {
  if (!code.simple()) throw NotSimple("complement needs a simple code");
  GrassCode out(code.ctx(), code.n(), code.k());
  for (const Subspace& s : enumerate_grassmannian(code.ctx(), code.n(), code.k(), enum_budget))
    if (code.multiplicity_of(s) == 0) out.add(s);
  return out;
}

}  // namespace grasscov
