#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "assocvar/field.hpp"

namespace assocvar {

using Vector = std::vector<Scalar>;

/// Dense matrix over a Field with exact entries.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  static Matrix identity(Field field, std::size_t n);
  /// Rows are normalized into the field.
  static Matrix from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  /// Row-major flattening, the coordinate vector used for spans of matrices.
  const Vector& flat() const { return data_; }
  static Matrix from_flat(Field field, std::size_t rows, std::size_t cols, const Vector& flat);

  bool is_zero() const;
  bool is_symmetric() const;
  Matrix transpose() const;
  Matrix scaled(const Scalar& c) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

/// Vector times matrix (row-vector convention).
Vector row_times(const Vector& v, const Matrix& m);

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Over F_p the row operations run through the
/// SIMD kernel table.
RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Basis of {v : m v = 0} as the rows of the result (free variables set to
/// unit vectors in increasing column order).
Matrix null_space(const Matrix& m);
Scalar determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
/// Some solution x of m x = b, if consistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Leading principal minors all positive (ordered fields only).
bool is_positive_definite(const Matrix& m);

/// Incrementally grown subspace of k^dim with membership tests.
class SpanBuilder {
 public:
  SpanBuilder(Field field, std::size_t dim) : field_(field), dim_(dim) {}

  /// Adds v; returns true when it was independent of the current span.
  bool insert(const Vector& v);
  bool contains(const Vector& v) const;
  std::size_t dimension() const { return basis_.size(); }
  /// The independent vectors in insertion order.
  const std::vector<Vector>& basis() const { return basis_; }

 private:
  Vector residual(const Vector& v) const;
  std::vector<std::uint32_t> residual_modp(const Vector& v) const;

  Field field_;
  std::size_t dim_;
  std::vector<Vector> basis_;
  // Echelon rows (pivot entry 1) for the exact path or the F_p path.
  std::vector<Vector> echelon_;
  std::vector<std::vector<std::uint32_t>> echelon_modp_;
  std::vector<std::size_t> pivots_;
};

/// JSON-friendly rendering helper: exact fractions as strings.
std::vector<std::vector<std::string>> to_strings(const Matrix& m);

}  // namespace assocvar
