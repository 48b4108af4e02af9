#include "grasscov/packing_search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace grasscov {

namespace {

void validate_instance(const PackingInstance& inst) {
  if (inst.unit_count < 0) throw InvalidArgs("negative unit count");
  if (inst.lambda < 1) throw InvalidArgs("lambda must be >= 1");
  if (inst.lambda > (1LL << 40)) throw InvalidArgs("lambda too large for the search engine");
  for (const auto& us : inst.item_units) {
    if (us.empty()) throw InvalidArgs("item with empty unit list");
    for (size_t j = 0; j < us.size(); ++j) {
      if (us[j] < 0 || us[j] >= inst.unit_count) throw InvalidArgs("unit index out of range");
      if (j > 0 && us[j] <= us[j - 1])
        throw InvalidArgs("item unit lists must be sorted and duplicate-free");
    }
  }
}

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double limit_s = 0.0;
  bool expired() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
           limit_s;
  }
};

struct PackState {
  const PackingInstance& inst;
  const PackingOptions& opt;
  int n_items;
  std::vector<long long> load;
  std::vector<char> fixed;
  long long cap_left = 0;
  long long min_units = 1;
  std::vector<int> chosen;
  std::vector<int> best;
  long long nodes = 0;
  bool stopped = false;
  bool budget_hit = false;
  bool cap_reached = false;
  Clock clock;

  PackState(const PackingInstance& in, const PackingOptions& op)
      : inst(in), opt(op), n_items(static_cast<int>(in.item_units.size())),
        load(in.unit_count, 0), fixed(in.item_units.size(), 0) {
    clock.limit_s = opt.budget.time_budget_s;
    cap_left = static_cast<long long>(inst.unit_count) * inst.lambda;
    min_units = std::numeric_limits<long long>::max();
    for (const auto& us : inst.item_units)
      min_units = std::min<long long>(min_units, static_cast<long long>(us.size()));
    if (n_items == 0) min_units = 1;
  }

  bool fits(int i) const {
    for (int u : inst.item_units[i])
      if (load[u] >= inst.lambda) return false;
    return true;
  }
  void apply(int i) {
    for (int u : inst.item_units[i]) ++load[u];
    cap_left -= static_cast<long long>(inst.item_units[i].size());
  }
  void undo(int i) {
    for (int u : inst.item_units[i]) --load[u];
    cap_left += static_cast<long long>(inst.item_units[i].size());
  }

  void note_incumbent() {
    if (chosen.size() > best.size()) {
      best = chosen;
      if (opt.upper_cap && BigInt(static_cast<long long>(best.size())) >= *opt.upper_cap) {
        stopped = true;
        cap_reached = true;
      }
    }
  }

  void rec(int i) {
    if (stopped) return;
    ++nodes;
    if (nodes > opt.budget.node_budget || ((nodes & 8191) == 0 && clock.expired())) {
      stopped = true;
      budget_hit = true;
      return;
    }
    if (i >= n_items) return;
    long long slack =
        std::min<long long>(n_items - i, min_units > 0 ? cap_left / min_units : 0);
    if (static_cast<long long>(chosen.size()) + slack <= static_cast<long long>(best.size()))
      return;
    if (fixed[i]) {
      rec(i + 1);
      return;
    }
    if (fits(i)) {
      apply(i);
      chosen.push_back(i);
      note_incumbent();
      if (!stopped) rec(i + 1);
      chosen.pop_back();
      undo(i);
      if (stopped) return;
    }
    rec(i + 1);
  }
};

struct CoverState {
  const PackingInstance& inst;
  const CoverOptions& opt;
  int n_items;
  std::vector<long long> load;
  std::vector<long long> def;
  long long deficiency_total = 0;
  std::vector<int> cnt_active;
  std::vector<char> used, excluded;
  std::vector<std::vector<int>> unit_items;  // reverse index
  long long max_units = 1;
  std::vector<int> chosen;
  std::vector<int> best;
  bool best_found = false;
  long long nodes = 0;
  bool stopped = false;
  bool budget_hit = false;
  bool cap_reached = false;
  Clock clock;

  CoverState(const PackingInstance& in, const CoverOptions& op)
      : inst(in), opt(op), n_items(static_cast<int>(in.item_units.size())),
        load(in.unit_count, 0), def(in.unit_count, in.lambda), cnt_active(in.unit_count, 0),
        used(in.item_units.size(), 0), excluded(in.item_units.size(), 0),
        unit_items(in.unit_count) {
    clock.limit_s = opt.budget.time_budget_s;
    deficiency_total = static_cast<long long>(inst.unit_count) * inst.lambda;
    for (int i = 0; i < n_items; ++i) {
      for (int u : inst.item_units[i]) {
        unit_items[u].push_back(i);
        ++cnt_active[u];
      }
      max_units = std::max<long long>(max_units, static_cast<long long>(inst.item_units[i].size()));
    }
  }

  void include(int c) {
    used[c] = 1;
    for (int u : inst.item_units[c]) {
      --cnt_active[u];
      ++load[u];
      if (def[u] > 0) {
        --def[u];
        --deficiency_total;
      }
    }
  }
  void uninclude(int c) {
    used[c] = 0;
    for (int u : inst.item_units[c]) {
      ++cnt_active[u];
      if (load[u] <= inst.lambda) {
        ++def[u];
        ++deficiency_total;
      }
      --load[u];
    }
  }
  void exclude(int c) {
    excluded[c] = 1;
    for (int u : inst.item_units[c]) --cnt_active[u];
  }
  void unexclude(int c) {
    excluded[c] = 0;
    for (int u : inst.item_units[c]) ++cnt_active[u];
  }

  void note_incumbent() {
    if (!best_found || chosen.size() < best.size()) {
      best = chosen;
      best_found = true;
      if (opt.lower_cap && BigInt(static_cast<long long>(best.size())) <= *opt.lower_cap) {
        stopped = true;
        cap_reached = true;
      }
    }
  }

  void rec() {
    if (stopped) return;
    ++nodes;
    if (nodes > opt.budget.node_budget || ((nodes & 8191) == 0 && clock.expired())) {
      stopped = true;
      budget_hit = true;
      return;
    }
    if (deficiency_total == 0) {
      note_incumbent();
      return;
    }
    long long need = (deficiency_total + max_units - 1) / max_units;
    if (best_found &&
        static_cast<long long>(chosen.size()) + need >= static_cast<long long>(best.size()))
      return;
    // Branch on the deficient unit with the fewest usable items.
    int pick = -1;
    for (int u = 0; u < inst.unit_count; ++u) {
      if (def[u] == 0) continue;
      if (pick < 0 || cnt_active[u] < cnt_active[pick]) pick = u;
    }
    if (pick < 0 || cnt_active[pick] < def[pick]) return;  // infeasible branch
    std::vector<int> cands;
    cands.reserve(cnt_active[pick]);
    for (int c : unit_items[pick])
      if (!used[c] && !excluded[c]) cands.push_back(c);
    // Child r commits candidate r and bars candidates 0..r-1, partitioning the
    // solutions below this node by their lowest-indexed item through the unit.
    int excluded_here = 0;
    for (size_t r = 0; r < cands.size(); ++r) {
      if (static_cast<long long>(cands.size() - r) < def[pick]) break;
      int c = cands[r];
      include(c);
      chosen.push_back(c);
      rec();
      chosen.pop_back();
      uninclude(c);
      if (stopped) break;
      exclude(c);
      ++excluded_here;
    }
    for (int r = 0; r < excluded_here; ++r) unexclude(cands[r]);
  }
};

void check_indices(const std::vector<int>& v, int n_items, const char* what) {
  for (int i : v)
    if (i < 0 || i >= n_items) throw InvalidArgs(std::string(what) + " index out of range");
}

}  // namespace

PackingResult max_packing(const PackingInstance& inst, const PackingOptions& opt) {
  validate_instance(inst);
  const int n_items = static_cast<int>(inst.item_units.size());
  check_indices(opt.seed, n_items, "seed");
  check_indices(opt.root_fix, n_items, "root fix");

  PackState st(inst, opt);
  for (int i : opt.root_fix) {
    if (st.fixed[i]) continue;
    if (!st.fits(i)) throw InvalidArgs("root fix items do not form a valid packing");
    st.apply(i);
    st.fixed[i] = 1;
    st.chosen.push_back(i);
  }
  // Validate the seed against a clean load vector before adopting it.
  if (!opt.seed.empty()) {
    std::vector<long long> sload(inst.unit_count, 0);
    std::vector<char> seen(n_items, 0);
    for (int i : opt.seed) {
      if (seen[i]) throw InvalidArgs("seed repeats an item");
      seen[i] = 1;
      for (int u : inst.item_units[i])
        if (++sload[u] > inst.lambda) throw InvalidArgs("seed is not a valid packing");
    }
    st.best = opt.seed;
    std::sort(st.best.begin(), st.best.end());
  }
  st.note_incumbent();
  if (!st.stopped) st.rec(0);

  PackingResult res;
  res.chosen = st.best;
  std::sort(res.chosen.begin(), res.chosen.end());
  res.explored = st.nodes;
  res.budget_hit = st.budget_hit;
  res.optimal = st.cap_reached || !st.budget_hit;
  return res;
}

CoverResult min_cover(const PackingInstance& inst, const CoverOptions& opt) {
  validate_instance(inst);
  const int n_items = static_cast<int>(inst.item_units.size());
  check_indices(opt.seed, n_items, "seed");
  check_indices(opt.root_fix, n_items, "root fix");

  CoverState st(inst, opt);
  for (int i : opt.root_fix) {
    if (st.used[i]) continue;
    st.include(i);
    st.chosen.push_back(i);
  }
  if (!opt.seed.empty()) {
    std::vector<long long> sload(inst.unit_count, 0);
    std::vector<char> seen(n_items, 0);
    for (int i : opt.seed) {
      if (seen[i]) throw InvalidArgs("seed repeats an item");
      seen[i] = 1;
      for (int u : inst.item_units[i]) ++sload[u];
    }
    for (int u = 0; u < inst.unit_count; ++u)
      if (sload[u] < inst.lambda) throw InvalidArgs("seed is not a valid cover");
    st.best = opt.seed;
    std::sort(st.best.begin(), st.best.end());
    st.best_found = true;
    if (opt.lower_cap && BigInt(static_cast<long long>(st.best.size())) <= *opt.lower_cap) {
      st.stopped = true;
      st.cap_reached = true;
    }
  }
  if (!st.stopped) st.rec();

  CoverResult res;
  res.chosen = st.best;
  std::sort(res.chosen.begin(), res.chosen.end());
  res.feasible = st.best_found;
  res.explored = st.nodes;
  res.budget_hit = st.budget_hit;
  res.optimal = st.cap_reached || !st.budget_hit;
  return res;
}

}  // namespace grasscov
