#pragma once

#include "rings.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cmdyn {

using IntVector = std::vector<Integer>;

/// Dense integer matrix; rows are lattice generators throughout this library.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  void append_row(std::span<const Integer> row);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(std::span<const Integer> v, const IntMatrix& m);  // row vector times matrix

/// P * A * Q = diag(invariants, 0...) with P, Q unimodular.
///
/// Only the column transform is recorded: the row lattice of A equals the span
/// of invariants[k] * row k of inverse_transform, so its saturation is spanned
/// by the first rank() rows of inverse_transform.
struct SmithForm {
  std::vector<Integer> invariants;  // positive, each dividing the next
  IntMatrix transform;              // Q
  IntMatrix inverse_transform;      // Q^-1
  std::size_t rank() const { return invariants.size(); }
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Row-style Hermite normal form with a caller-chosen column priority.
///
/// Columns are tried as pivots in `column_order`; each pivot is positive and the
/// entries of earlier rows in that pivot column are reduced into [0, pivot).
/// Reducing a vector against the result gives a canonical coset representative.
class HermiteBasis {
 public:
  HermiteBasis() = default;
  HermiteBasis(const IntMatrix& generators, std::vector<std::size_t> column_order);

  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  std::span<const std::size_t> pivots() const { return pivots_; }

  IntVector reduce(IntVector v) const;
  bool contains(std::span<const Integer> v) const;

 private:
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Column order that keeps low-index columns out of the pivot set as long as possible.
std::vector<std::size_t> reverse_column_order(std::size_t cols);

}  // namespace cmdyn
