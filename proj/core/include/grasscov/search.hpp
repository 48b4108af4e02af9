#pragma once

// Searches for extremal codes: greedy construction, exact branch and bound
// with bound-driven early stopping, and the algebraic spread construction.
// Covering-side searches run on the orthogonal-complement translation of the
// problem and dualize their certificate back, revalidating it with the
// independent covering checker. Everything is deterministic for a fixed
// configuration.

#include <cstdint>
#include <string>
#include <vector>

#include "grasscov/bounds.hpp"
#include "grasscov/codes.hpp"
#include "grasscov/packing_search.hpp"

namespace grasscov {

struct SearchConfig {
  long long node_budget = 100'000'000;
  double time_budget_s = 600.0;
  std::uint64_t seed = 0;  // base of the deterministic tie-break streams
  int restarts = 8;        // seeded greedy passes beyond the canonical one
  long long enum_budget = kDefaultEnumBudget;
};

struct SearchResult {
  GrassCode code;  // certificate
  long long size = 0;
  bool optimal = false;
  long long explored = 0;
  bool budget_hit = false;
  std::vector<std::string> trace;
};

// Greedy multiple-code construction: repeatedly add the codeword that keeps
// every t-subspace load within lambda, preferring moves that keep the load
// profile flat. The canonical pass breaks ties by enumeration order;
// `restarts` further passes break them through seeded shuffles and the best
// pass wins. The result is always maximal, never claimed optimal.
SearchResult greedy_max_multiple(int q, int n, int k, int t, long long lambda,
                                 const SearchConfig& cfg = {});

// Exact maximum for the (t, lambda) multiple-code size with a certificate.
// optimal means the branch and bound completed or the incumbent met a formula
// upper bound; exhausting a budget leaves the incumbent with optimal = false.
SearchResult exact_max_multiple(int q, int n, int k, int t, long long lambda,
                                const SearchConfig& cfg = {});

// Repeats-allowed variant (codewords may carry multiplicity up to lambda).
SearchResult exact_max_multiple_repeats(int q, int n, int k, int t, long long lambda,
                                        const SearchConfig& cfg = {});

// Smallest code containing every t-subspace at least lambda times.
// lambda = 0 yields the empty code; lambda beyond lambda_complete is
// rejected (InvalidArgs) since no simple code reaches it.
SearchResult exact_min_cover(int q, int n, int k, int t, long long lambda,
                             const SearchConfig& cfg = {});

// Covering-side searches (parameters alpha, delta) through duality.
SearchResult greedy_max_covering(int q, int n, int k, int delta, long long alpha,
                                 const SearchConfig& cfg = {});
SearchResult exact_max_covering(int q, int n, int k, int delta, long long alpha,
                                const SearchConfig& cfg = {});
SearchResult exact_max_covering_repeats(int q, int n, int k, int delta, long long alpha,
                                        const SearchConfig& cfg = {});

// Partition of the nonzero vectors of F_q^n into k-subspaces (needs k | n,
// NotDivisible otherwise), built from the degree-k extension realized by a
// companion matrix. The result has (q^n - 1)/(q^k - 1) words with pairwise
// trivial intersections.
GrassCode spread_construct(int q, int n, int k, long long budget = kDefaultEnumBudget);

}  // namespace grasscov
