#include <doctest.h>

#include <algorithm>
#include <random>

#include "grasscov/errors.hpp"
#include "grasscov/packing_search.hpp"

using namespace grasscov;

namespace {

// plain exhaustive DFS over all item subsets, no pruning tricks
int brute_max_packing(const PackingInstance& inst) {
  int n = static_cast<int>(inst.item_units.size());
  std::vector<long long> load(static_cast<size_t>(inst.unit_count), 0);
  int best = 0;
  auto rec = [&](auto&& self, int i, int taken) -> void {
    best = std::max(best, taken);
    if (i == n) return;
    self(self, i + 1, taken);
    bool ok = true;
    for (int u : inst.item_units[static_cast<size_t>(i)])
      if (load[static_cast<size_t>(u)] + 1 > inst.lambda) ok = false;
    if (ok) {
      for (int u : inst.item_units[static_cast<size_t>(i)]) ++load[static_cast<size_t>(u)];
      self(self, i + 1, taken + 1);
      for (int u : inst.item_units[static_cast<size_t>(i)]) --load[static_cast<size_t>(u)];
    }
  };
  rec(rec, 0, 0);
  return best;
}

int brute_min_cover(const PackingInstance& inst) {
  int n = static_cast<int>(inst.item_units.size());
  std::vector<long long> load(static_cast<size_t>(inst.unit_count), 0);
  int best = n + 1;
  auto rec = [&](auto&& self, int i, int taken) -> void {
    if (taken >= best) return;
    bool done = true;
    for (long long l : load)
      if (l < inst.lambda) done = false;
    if (done) {
      best = taken;
      return;
    }
    if (i == n) return;
    self(self, i + 1, taken);
    for (int u : inst.item_units[static_cast<size_t>(i)]) ++load[static_cast<size_t>(u)];
    self(self, i + 1, taken + 1);
    for (int u : inst.item_units[static_cast<size_t>(i)]) --load[static_cast<size_t>(u)];
  };
  rec(rec, 0, 0);
  return best;  // n + 1 means infeasible
}

PackingInstance triangle_instance() {
  // three units, items: {0}, {1}, {2}, {0,1}, {1,2}, {0,2}, {0,1,2}
  PackingInstance inst;
  inst.unit_count = 3;
  inst.lambda = 1;
  inst.item_units = {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}, {0, 1, 2}};
  return inst;
}

}  // namespace

TEST_SUITE("packing_search") {

TEST_CASE("hand-checkable packing and cover optima") {
  PackingInstance inst = triangle_instance();
  PackingResult p = max_packing(inst);
  CHECK(p.optimal);
  CHECK(p.chosen == std::vector<int>{0, 1, 2});  // three singletons, load 1 each

  CoverResult c = min_cover(inst);
  CHECK(c.feasible);
  CHECK(c.optimal);
  CHECK(c.chosen.size() == 1);  // the all-units item covers everything
  CHECK(c.chosen == std::vector<int>{6});
}

TEST_CASE("capacity two changes both optima") {
  PackingInstance inst = triangle_instance();
  inst.lambda = 2;
  PackingResult p = max_packing(inst);
  CHECK(p.optimal);
  CHECK(static_cast<int>(p.chosen.size()) == brute_max_packing(inst));

  CoverResult c = min_cover(inst);
  CHECK(c.optimal);
  CHECK(static_cast<int>(c.chosen.size()) == brute_min_cover(inst));
  // items are sets, so the all-units item cannot repeat; three items are needed
  CHECK(c.chosen.size() == 3);
}

TEST_CASE("the reported packing is lexicographically least among optima") {
  PackingInstance inst;
  inst.unit_count = 2;
  inst.lambda = 1;
  // items 0/1 conflict on unit 0, items 2/3 conflict on unit 1; optima are
  // all four pairs {0 or 1} x {2 or 3}
  inst.item_units = {{0}, {0}, {1}, {1}};
  PackingResult p = max_packing(inst);
  CHECK(p.optimal);
  CHECK(p.chosen == std::vector<int>{0, 2});
}

TEST_CASE("root-fixed items appear in every reported solution") {
  PackingInstance inst = triangle_instance();
  PackingOptions opt;
  opt.root_fix = {3};  // force item {0,1}
  PackingResult p = max_packing(inst, opt);
  CHECK(p.optimal);
  CHECK(std::find(p.chosen.begin(), p.chosen.end(), 3) != p.chosen.end());
  CHECK(p.chosen == std::vector<int>{2, 3});  // {2} is the only compatible extension
}

TEST_CASE("reaching a proven cap ends the packing search as optimal") {
  PackingInstance inst = triangle_instance();
  PackingOptions opt;
  opt.upper_cap = BigInt(3);
  PackingResult p = max_packing(inst, opt);
  CHECK(p.optimal);
  CHECK(p.chosen.size() == 3);
}

TEST_CASE("an exhausted node budget leaves a valid incumbent, unclaimed") {
  PackingInstance inst;
  inst.unit_count = 8;
  inst.lambda = 1;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 24; ++i) {
    std::vector<int> units;
    for (int u = 0; u < 8; ++u)
      if (rng() % 3 == 0) units.push_back(u);
    if (units.empty()) units.push_back(static_cast<int>(rng() % 8));
    inst.item_units.push_back(units);
  }
  PackingOptions opt;
  opt.budget.node_budget = 3;
  PackingResult p = max_packing(inst, opt);
  CHECK(p.budget_hit);
  CHECK_FALSE(p.optimal);
  // incumbent is still a valid packing
  std::vector<long long> load(8, 0);
  for (int i : p.chosen)
    for (int u : inst.item_units[static_cast<size_t>(i)]) {
      ++load[static_cast<size_t>(u)];
      CHECK(load[static_cast<size_t>(u)] <= inst.lambda);
    }
}

TEST_CASE("seeds are validated before being adopted") {
  PackingInstance inst = triangle_instance();
  PackingOptions opt;
  opt.seed = {0, 0};
  CHECK_THROWS_AS((void)max_packing(inst, opt), InvalidArgs);
  opt.seed = {0, 3};  // both hit unit 0 at lambda 1
  CHECK_THROWS_AS((void)max_packing(inst, opt), InvalidArgs);
  opt.seed = {99};
  CHECK_THROWS_AS((void)max_packing(inst, opt), InvalidArgs);
  opt.seed = {0, 1, 2};
  PackingResult p = max_packing(inst, opt);
  CHECK(p.optimal);

  CoverOptions copt;
  copt.seed = {0};  // not a cover
  CHECK_THROWS_AS((void)min_cover(inst, copt), InvalidArgs);
  copt.seed = {6};
  CoverResult c = min_cover(inst, copt);
  CHECK(c.optimal);
  CHECK(c.chosen.size() == 1);
}

TEST_CASE("uncoverable units are reported as infeasible") {
  PackingInstance inst;
  inst.unit_count = 3;
  inst.lambda = 1;
  inst.item_units = {{0}, {1}};  // nothing touches unit 2
  CoverResult c = min_cover(inst);
  CHECK_FALSE(c.feasible);
}

TEST_CASE("random instances match plain exhaustive search") {
  std::mt19937_64 rng(20240818);
  for (int iter = 0; iter < 50; ++iter) {
    PackingInstance inst;
    inst.unit_count = 4 + static_cast<int>(rng() % 5);  // 4..8
    inst.lambda = 1 + static_cast<long long>(rng() % 2);
    int items = 6 + static_cast<int>(rng() % 9);  // 6..14
    for (int i = 0; i < items; ++i) {
      std::vector<int> units;
      for (int u = 0; u < inst.unit_count; ++u)
        if (rng() % 3 == 0) units.push_back(u);
      if (units.empty()) units.push_back(static_cast<int>(rng() % inst.unit_count));
      inst.item_units.push_back(units);
    }
    CAPTURE(iter);
    PackingResult p = max_packing(inst);
    REQUIRE(p.optimal);
    CHECK(static_cast<int>(p.chosen.size()) == brute_max_packing(inst));

    CoverResult c = min_cover(inst);
    int want = brute_min_cover(inst);
    if (want > items) {
      CHECK_FALSE(c.feasible);
    } else {
      REQUIRE(c.feasible);
      REQUIRE(c.optimal);
      CHECK(static_cast<int>(c.chosen.size()) == want);
    }
  }
}

}  // TEST_SUITE
