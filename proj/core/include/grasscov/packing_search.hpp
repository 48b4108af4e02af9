#pragma once

// Generic exact search over "items occupy units" instances.
//
// An instance has a set of capacity units and a list of items, each item
// occupying a fixed duplicate-free set of units.  Two problems are solved on
// top of it:
//
//   max_packing   largest set of items such that no unit is occupied more
//                 than lambda times,
//   min_cover     smallest set of items such that every unit is occupied at
//                 least lambda times.
//
// Both searches are deterministic: items are branched in index order, so the
// caller controls canonical order by how it numbers items.  When max_packing
// runs to completion without an early cap it returns the lexicographically
// least optimum (as a sorted index list).  Budgets never throw; exhausting
// one sets budget_hit and leaves the incumbent in place.

#include <optional>
#include <vector>

#include "grasscov/errors.hpp"
#include "grasscov/grassmann.hpp"

namespace grasscov {

struct PackingInstance {
  int unit_count = 0;
  long long lambda = 1;                      // per-unit capacity or demand
  std::vector<std::vector<int>> item_units;  // duplicate-free, sorted per item
};

struct SearchBudget {
  long long node_budget = 100'000'000;
  double time_budget_s = 600.0;
};

struct PackingOptions {
  SearchBudget budget;
  std::vector<int> seed;            // starting incumbent, validated
  std::optional<BigInt> upper_cap;  // proven upper bound; reaching it ends the search
  std::vector<int> root_fix;        // items forced into every explored solution
};

struct PackingResult {
  std::vector<int> chosen;  // sorted item indices
  bool optimal = false;
  long long explored = 0;
  bool budget_hit = false;
};

PackingResult max_packing(const PackingInstance& inst, const PackingOptions& opt = {});

struct CoverOptions {
  SearchBudget budget;
  std::vector<int> seed;            // feasible cover to improve on
  std::optional<BigInt> lower_cap;  // proven lower bound; reaching it ends the search
  std::vector<int> root_fix;
};

struct CoverResult {
  std::vector<int> chosen;  // sorted item indices
  bool feasible = false;    // an incumbent cover was found
  bool optimal = false;
  long long explored = 0;
  bool budget_hit = false;
};

CoverResult min_cover(const PackingInstance& inst, const CoverOptions& opt = {});

}  // namespace grasscov
