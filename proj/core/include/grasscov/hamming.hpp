#pragma once

// Bridges between classical linear codes, set packings, and Grassmannian
// codes. The columns of a full-rank generator matrix, read as 1-subspaces of
// the message space, form a covering code exactly when the linear code's
// minimum distance is large enough; dually, the columns of a parity-check
// matrix with every d-1 columns independent form a covering code in the
// syndrome space. Set packings are the q = 1 shadow of multiple codes and
// share the exact-search engine. Generalized weight hierarchies and the
// union-support hierarchy over codeword subsets are computed by exhaustive
// enumeration at desk scale.

#include <array>
#include <vector>

#include "grasscov/codes.hpp"
#include "grasscov/packing_search.hpp"

namespace grasscov {

class LinearCode {
 public:
  // generator is h x r over F_q and must have full row rank (RankDeficient).
  explicit LinearCode(MatrixFq generator);

  const FieldCtx& ctx() const { return gen_.ctx(); }
  int length() const { return gen_.cols(); }     // r
  int dimension() const { return gen_.rows(); }  // h
  const MatrixFq& generator() const { return gen_; }

 private:
  MatrixFq gen_;
};

// All q^h codewords in message-index order (index read as base-q digits,
// lowest first). BudgetExceeded when q^h > budget.
std::vector<std::vector<Fq>> codewords(const LinearCode& c, long long budget = 1 << 20);

// Minimum Hamming distance by full codeword enumeration, q^h <= budget.
int min_hamming_distance(const LinearCode& c, long long budget = 1 << 20);

// The r columns of a full-rank h x r generator as a multiset of 1-subspaces
// of F_q^h. The result is a valid alpha-(h,1,h-1) covering code exactly when
// the linear code has minimum distance >= r - alpha + 1.
GrassCode generator_to_grasscode(const MatrixFq& G);

// The r columns of an m x r parity-check matrix as 1-subspaces of F_q^m,
// after verifying that every d-1 columns are linearly independent
// (IndependenceViolated carries the first dependent column set). The result
// is a (d-1)-(m,1,d-2) covering code. BudgetExceeded when there are more
// than budget column subsets to verify.
GrassCode parity_to_covering(const MatrixFq& H, int d, long long budget = 5'000'000);

// Blocks are k-subsets of {1..n}, stored sorted, no repeated blocks.
struct SetPacking {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> blocks;
};

// Validates and canonicalizes (sorts each block, keeps block order).
// InvalidArgs for malformed blocks, NotSimple for repeated blocks.
SetPacking make_set_packing(int n, int k, std::vector<std::vector<int>> blocks);

struct SetPackingReport {
  bool valid = true;
  long long max_load = 0;
  // Witness when invalid: a t-subset held by more than lambda blocks.
  std::vector<int> t_subset;
  std::vector<int> block_indices;
};

// Every t-subset of {1..n} must lie in at most lambda blocks.
SetPackingReport set_packing_check(const SetPacking& p, int t, long long lambda);

// Closed forms for the maximum packing of (n-2)-subsets with every
// (n-3)-subset in at most lambda blocks, lambda = 1, 2, 3:
// (floor(n/2), floor(n^2/4), n(n-1)/2). Needs n >= 4.
std::array<long long, 3> turan_values(long long n);

struct SetPackingSearchResult {
  SetPacking packing;
  bool optimal = false;
  long long explored = 0;
  bool budget_hit = false;
};

// Exhaustive maximum set packing: the largest family of k-subsets of {1..n}
// with every t-subset in at most lambda blocks. Branch and bound over the
// lex-ordered k-subsets, first block fixed to {1..k} (the symmetric group is
// transitive on k-subsets, so some maximum packing contains it).
SetPackingSearchResult max_set_packing(int n, int k, int t, long long lambda,
                                       const SearchBudget& budget = {});

// Generalized weight hierarchy d_1..d_h: d_r is the smallest support size of
// an r-dimensional subcode (subcodes enumerated as subspaces of the message
// space pushed through the generator). d_1 is the minimum distance.
std::vector<int> generalized_weights(const LinearCode& c, long long budget = kDefaultEnumBudget);

// Union-support hierarchy c_1..c_alpha_max: c_a is the smallest union
// support over a distinct nonzero codewords. Nondecreasing, c_1 = d_1; for
// binary codes the values are constant on the blocks [2^i, 2^{i+1}-1] where
// they equal d_{i+1}.
std::vector<int> covering_hierarchy(const LinearCode& c, int alpha_max,
                                    long long budget = 5'000'000);

}  // namespace grasscov
