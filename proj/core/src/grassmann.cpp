#include "grasscov/grassmann.hpp"

#include <algorithm>
#include <numeric>

namespace grasscov {

BigInt gaussian_binomial(int n, int k, int q) {
  if (n < 0 || k < 0 || k > n) throw InvalidArgs("gaussian_binomial needs 0 <= k <= n");
  if (q < 2) throw InvalidArgs("gaussian_binomial needs q >= 2");
  BigInt num = 1, den = 1, Q = q;
  for (int i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(Q, n - i) - 1;
    den *= boost::multiprecision::pow(Q, k - i) - 1;
  }
  return num / den;  // exact
}

Subspace Subspace::from_matrix(const MatrixFq& m) {
  RrefResult r = rref(m);
  std::vector<Fq> e(r.mat.entries().begin(),
                    r.mat.entries().begin() + static_cast<size_t>(r.rank) * r.mat.cols());
  Subspace s;
  s.basis_ = MatrixFq(m.ctx(), r.rank, m.cols(), std::move(e));
  return s;
}

Subspace Subspace::from_rref(MatrixFq m) {
  Subspace s;
  s.basis_ = std::move(m);
  return s;
}

bool Subspace::contains(const Subspace& other) const {
  if (n() != other.n()) throw DimensionMismatch("contains: ambient dimension mismatch");
  if (other.dim() > dim()) return false;
  return rank_of(stack_rows(basis_, other.basis_)) == dim();
}

std::size_t SubspaceHash::operator()(const Subspace& s) const {
  // FNV-1a over shape and entries.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::size_t>(s.n()));
  mix(static_cast<std::size_t>(s.dim()));
  for (Fq v : s.basis().entries()) mix(v);
  return h;
}

static std::vector<int> pivot_columns(const MatrixFq& rref_basis) {
  std::vector<int> piv;
  piv.reserve(rref_basis.rows());
  for (int i = 0; i < rref_basis.rows(); ++i) {
    int c = 0;
    while (c < rref_basis.cols() && rref_basis.at(i, c) == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

bool subspace_less(const Subspace& a, const Subspace& b) {
  if (a.n() != b.n()) return a.n() < b.n();
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  std::vector<int> pa = pivot_columns(a.basis());
  std::vector<int> pb = pivot_columns(b.basis());
  if (pa != pb) return pa < pb;
  return a.basis().entries() < b.basis().entries();
}

std::vector<Subspace> enumerate_grassmannian(const FieldCtx& ctx, int n, int k,
                                             long long budget) {
  if (n < 0 || k < 0 || k > n) throw InvalidArgs("enumerate_grassmannian needs 0 <= k <= n");
  BigInt total = gaussian_binomial(n, k, ctx.q());
  if (total > budget)
    throw BudgetExceeded("Grassmannian enumeration over budget", total.str());

  std::vector<Subspace> out;
  out.reserve(static_cast<size_t>(total));
  const int q = ctx.q();

  if (k == 0) {
    out.push_back(Subspace::from_rref(MatrixFq(ctx, 0, n)));
    return out;
  }

  std::vector<int> piv(k);
  std::iota(piv.begin(), piv.end(), 0);
  for (;;) {
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    // Free positions in row-major order; the RREF pattern allows entries only
    // to the right of the row's pivot and outside pivot columns.
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (!is_piv[j]) free_pos.emplace_back(i, j);

    MatrixFq base(ctx, k, n);
    for (int i = 0; i < k; ++i) base.set(i, piv[i], 1);
    std::vector<Fq> vals(free_pos.size(), 0);
    for (;;) {
      MatrixFq m = base;
      for (size_t t = 0; t < free_pos.size(); ++t)
        m.set(free_pos[t].first, free_pos[t].second, vals[t]);
      out.push_back(Subspace::from_rref(std::move(m)));
      // Advance the entry odometer, last position fastest.
      int t = static_cast<int>(vals.size()) - 1;
      while (t >= 0 && vals[t] == q - 1) {
        vals[t] = 0;
        --t;
      }
      if (t < 0) break;
      ++vals[t];
    }

    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

int grassmann_distance(const Subspace& a, const Subspace& b) {
  if (a.n() != b.n()) throw DimensionMismatch("distance: ambient dimension mismatch");
  if (a.dim() != b.dim()) throw DimensionMismatch("distance: subspace dimensions differ");
  int sum_dim = rank_of(stack_rows(a.basis(), b.basis()));
  return sum_dim - a.dim();
}

Subspace orthogonal_complement(const Subspace& s) {
  MatrixFq ns = null_space(s.basis());
  return Subspace::from_rref(std::move(ns));
}

}  // namespace grasscov
