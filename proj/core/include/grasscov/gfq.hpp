#pragma once

// Arithmetic and exact linear algebra over finite fields F_q, q <= 256.
//
// Field elements are integers in [0, q). For q = p^m with m > 1 the base-p
// digits of the encoding are the coefficients of the residue polynomial:
// digit i of e is the coefficient of x^i. The modulus is the fixed table
// polynomial for p^m (the monic irreducible with the smallest encoding, e.g.
// x^2 + x + 1 for F_4), so serialized matrices mean the same thing everywhere.

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

#include "grasscov/errors.hpp"

namespace grasscov {

using Fq = std::uint8_t;

namespace detail {
struct FieldTables;
}

class FieldCtx {
 public:
  FieldCtx() = default;  // empty; must be assigned before use

  int q() const;
  int p() const;  // characteristic
  int m() const;  // extension degree, 1 for prime fields

  // Modulus coefficients c0..cm (monic, cm = 1). Empty for prime fields.
  const std::vector<Fq>& modulus() const;

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;  // InvalidArgs on 0
  Fq div(Fq a, Fq b) const;
  Fq pow(Fq a, long long e) const;

  // Multiplicative generator and its log/antilog tables.
  Fq generator() const;
  int log(Fq a) const;          // InvalidArgs on 0
  Fq antilog(long long e) const;  // generator^e, e reduced mod q-1

  bool valid_element(int v) const { return v >= 0 && v < q(); }

  bool operator==(const FieldCtx& other) const;
  bool operator!=(const FieldCtx& other) const { return !(*this == other); }

 private:
  friend FieldCtx make_field(int q);
  explicit FieldCtx(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}
  const detail::FieldTables& tab() const;
  std::shared_ptr<const detail::FieldTables> t_;
};

// Build (or fetch from the process-wide cache) the field with q elements.
// Throws NotAPrimePower if q has two distinct prime factors, Unsupported if
// q < 2 or q > 256.
FieldCtx make_field(int q);

// Dense row-major matrix over F_q. Immutable use is the norm: operations
// return new matrices.
class MatrixFq {
 public:
  MatrixFq() = default;
  MatrixFq(FieldCtx ctx, int rows, int cols);  // zero-filled
  MatrixFq(FieldCtx ctx, int rows, int cols, std::vector<Fq> entries);

  static MatrixFq identity(FieldCtx ctx, int n);

  const FieldCtx& ctx() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Fq at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
  void set(int r, int c, Fq v) { e_[static_cast<size_t>(r) * cols_ + c] = v; }
  std::span<const Fq> row(int r) const {
    return {e_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
  }
  const std::vector<Fq>& entries() const { return e_; }

  bool operator==(const MatrixFq& other) const;
  bool operator!=(const MatrixFq& other) const { return !(*this == other); }

 private:
  FieldCtx ctx_;
  int rows_ = 0, cols_ = 0;
  std::vector<Fq> e_;
};

struct RrefResult {
  MatrixFq mat;            // same shape, in reduced row echelon form
  int rank = 0;
  std::vector<int> pivots;  // pivot column per pivot row, strictly increasing
};

// Unique reduced row echelon form: pivot entries 1, pivot columns otherwise
// zero, pivot columns strictly increasing, zero rows at the bottom.
RrefResult rref(const MatrixFq& m);

int rank_of(const MatrixFq& m);
MatrixFq transpose(const MatrixFq& m);
MatrixFq mat_mul(const MatrixFq& a, const MatrixFq& b);
MatrixFq stack_rows(const MatrixFq& a, const MatrixFq& b);

// Basis of the row-space sum A + B: RREF with zero rows dropped.
MatrixFq sum_space(const MatrixFq& a, const MatrixFq& b);

// dim(rowspace A  intersect  rowspace B), via dim A + dim B - dim(A+B).
int intersect_dim(const MatrixFq& a, const MatrixFq& b);

// RREF basis of the right kernel {x : M x^T = 0}, one row per kernel basis
// vector ((cols - rank) rows of length cols).
MatrixFq null_space(const MatrixFq& m);

// Packed representation for F_2 matrices, one 64-bit word per row; bit j of a
// word is column j. Used by the search paths; must agree with the generic
// code (cross-checked in tests).
struct PackedMatF2 {
  int rows = 0, cols = 0;
  std::vector<std::uint64_t> bits;

  PackedMatF2() = default;
  PackedMatF2(int rows, int cols);  // cols <= 64

  static PackedMatF2 from_matrix(const MatrixFq& m);  // m must be over F_2
  MatrixFq to_matrix(FieldCtx f2) const;
};

struct PackedRrefResult {
  PackedMatF2 mat;
  int rank = 0;
  std::vector<int> pivots;
};

PackedRrefResult rref(const PackedMatF2& m);

// Incremental row-space accumulator: feed rows, watch the rank grow. Keeps a
// row-reduced basis; copies are cheap enough for backtracking search. Uses
// the packed representation when q = 2 and cols <= 64.
class SpanAcc {
 public:
  SpanAcc(FieldCtx ctx, int cols);

  // Returns true when the row enlarged the span.
  bool add_row(std::span<const Fq> row);
  void add_matrix(const MatrixFq& m);

  int rank() const { return rank_; }
  int cols() const { return cols_; }

 private:
  FieldCtx ctx_;
  int cols_ = 0;
  int rank_ = 0;
  bool packed_ = false;
  std::vector<std::uint64_t> basis_bits_;       // indexed by pivot column
  std::vector<std::vector<Fq>> basis_rows_;     // generic path, pivot-sorted
  std::vector<int> basis_pivots_;
};

}  // namespace grasscov
