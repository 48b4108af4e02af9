#pragma once

// The Grassmannian G_q(n, k): all k-dimensional subspaces of F_q^n.
// A subspace is represented by the unique RREF basis matrix of its row space,
// so equality is entry-wise comparison and every subspace has one canonical
// form. Enumeration is lexicographic over (pivot column set, then the
// row-major entry sequence), which fixes a deterministic order used by the
// search and witness machinery.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grasscov/gfq.hpp"

namespace grasscov {

using BigInt = boost::multiprecision::cpp_int;

// Gaussian binomial [n k]_q: the number of k-subspaces of F_q^n.
// InvalidArgs when n or k is negative or k > n.
BigInt gaussian_binomial(int n, int k, int q);

class Subspace {
 public:
  Subspace() = default;

  // Canonicalize an arbitrary spanning matrix (rows need not be independent).
  static Subspace from_matrix(const MatrixFq& m);
  // Adopt a matrix that is already in RREF with full row rank (no check).
  static Subspace from_rref(MatrixFq m);

  int n() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  const MatrixFq& basis() const { return basis_; }
  const FieldCtx& ctx() const { return basis_.ctx(); }

  // Does this subspace contain `other`?
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& other) const { return basis_ == other.basis_; }
  bool operator!=(const Subspace& other) const { return !(*this == other); }

 private:
  MatrixFq basis_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const;
};

// Strict order matching the enumeration order (within one Grassmannian).
bool subspace_less(const Subspace& a, const Subspace& b);

inline constexpr long long kDefaultEnumBudget = 10'000'000;

// All of G_q(n, k) in canonical order. Refuses (BudgetExceeded, carrying the
// exact count) when [n k]_q exceeds the budget.
std::vector<Subspace> enumerate_grassmannian(const FieldCtx& ctx, int n, int k,
                                             long long budget = kDefaultEnumBudget);

// d_G(X, Y) = k - dim(X intersect Y); requires dim X = dim Y and equal n.
int grassmann_distance(const Subspace& a, const Subspace& b);

// Dual subspace under the standard inner product; dim flips to n - dim.
Subspace orthogonal_complement(const Subspace& s);

}  // namespace grasscov
