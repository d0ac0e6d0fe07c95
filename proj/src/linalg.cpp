#include "assocvar/linalg.hpp"

#include "assocvar/error.hpp"
#include "assocvar/simd/kernels.hpp"

namespace assocvar {

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::Mismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.normalize(rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_flat(Field field, std::size_t rows, std::size_t cols, const Vector& flat) {
  Matrix m(field, rows, cols);
  m.data_ = flat;
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<long>(r * cols_),
                data_.begin() + static_cast<long>((r + 1) * cols_));
}

bool Matrix::is_zero() const {
  for (const auto& v : data_)
    if (!Field::is_zero(v)) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m = *this;
  Scalar cn = field_.normalize(c);
  for (auto& v : m.data_) v = field_.mul(cn, v);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_ || !(a.field_ == b.field_))
    throw Error(ErrorCode::Mismatch, "matrix product shape mismatch");
  const Field& f = a.field_;
  Matrix c(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (Field::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::Mismatch, "matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::Mismatch, "matrix difference shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
  return c;
}

Vector row_times(const Vector& v, const Matrix& m) {
  if (v.size() != m.rows()) throw Error(ErrorCode::Mismatch, "vector/matrix shape mismatch");
  const Field& f = m.field();
  Vector out(m.cols(), Scalar(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (Field::is_zero(v[i])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(v[i], m(i, j)));
  }
  return out;
}

namespace {

RowEchelon rref_modp(const Matrix& m) {
  const Field& f = m.field();
  const std::uint32_t p = f.characteristic();
  std::vector<std::vector<std::uint32_t>> rows(m.rows(), std::vector<std::uint32_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = f.residue(m(i, j));

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && rows[sel][c] == 0) ++sel;
    if (sel == m.rows()) continue;
    std::swap(rows[sel], rows[r]);
    std::uint32_t inv = f.residue(f.inv(Scalar(static_cast<unsigned long>(rows[r][c]))));
    simd::scale_mod(rows[r], inv, p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      simd::axpy_mod(rows[i], p - rows[i][c], rows[r], p);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix out(f, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Scalar(static_cast<unsigned long>(rows[i][j]));
  return {std::move(out), std::move(pivots)};
}

RowEchelon rref_exact(const Matrix& m) {
  const Field& f = m.field();
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && Field::is_zero(a(sel, c))) ++sel;
    if (sel == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(r, j));
    Scalar inv = f.inv(a(r, c));
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = f.mul(inv, a(r, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || Field::is_zero(a(i, c))) continue;
      Scalar factor = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

}  // namespace

RowEchelon rref(const Matrix& m) {
  return m.field().is_prime() ? rref_modp(m) : rref_exact(m);
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix null_space(const Matrix& m) {
  const Field& f = m.field();
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), Scalar(0));
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return Matrix::from_rows(f, basis, m.cols());
}

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::Mismatch, "determinant of a non-square matrix");
  const Field& f = m.field();
  Matrix a = m;
  Scalar det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && Field::is_zero(a(sel, c))) ++sel;
    if (sel == n) return Scalar(0);
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    Scalar inv = f.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (Field::is_zero(a(i, c))) continue;
      Scalar factor = f.mul(a(i, c), inv);
      for (std::size_t j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::Mismatch, "right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = m.field().normalize(b[i]);
  }
  RowEchelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), Scalar(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
  return x;
}

bool is_positive_definite(const Matrix& m) {
  if (!m.field().is_ordered())
    throw Error(ErrorCode::InvalidArgument, "definiteness needs an ordered field");
  if (!m.is_symmetric()) return false;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    Matrix minor(m.field(), k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(i, j);
    if (sgn(determinant(minor)) <= 0) return false;
  }
  return true;
}

Vector SpanBuilder::residual(const Vector& v) const {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = field_.normalize(v[i]);
  for (std::size_t k = 0; k < echelon_.size(); ++k) {
    const Scalar c = r[pivots_[k]];
    if (Field::is_zero(c)) continue;
    for (std::size_t j = 0; j < dim_; ++j) r[j] = field_.sub(r[j], field_.mul(c, echelon_[k][j]));
  }
  return r;
}

std::vector<std::uint32_t> SpanBuilder::residual_modp(const Vector& v) const {
  const std::uint32_t p = field_.characteristic();
  std::vector<std::uint32_t> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = field_.residue(field_.normalize(v[i]));
  for (std::size_t k = 0; k < echelon_modp_.size(); ++k) {
    const std::uint32_t c = r[pivots_[k]];
    if (c == 0) continue;
    simd::axpy_mod(r, p - c, echelon_modp_[k], p);
  }
  return r;
}

bool SpanBuilder::contains(const Vector& v) const {
  if (v.size() != dim_) throw Error(ErrorCode::Mismatch, "vector length mismatch in span");
  if (field_.is_prime()) {
    auto r = residual_modp(v);
    for (auto x : r)
      if (x) return false;
    return true;
  }
  for (const auto& x : residual(v))
    if (!Field::is_zero(x)) return false;
  return true;
}

bool SpanBuilder::insert(const Vector& v) {
  if (v.size() != dim_) throw Error(ErrorCode::Mismatch, "vector length mismatch in span");
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    auto r = residual_modp(v);
    std::size_t piv = 0;
    while (piv < dim_ && r[piv] == 0) ++piv;
    if (piv == dim_) return false;
    std::uint32_t inv = field_.residue(field_.inv(Scalar(static_cast<unsigned long>(r[piv]))));
    simd::scale_mod(r, inv, p);
    // Keep earlier rows reduced at the new pivot so residuals stay cheap.
    for (auto& row : echelon_modp_)
      if (row[piv]) simd::axpy_mod(row, p - row[piv], r, p);
    echelon_modp_.push_back(std::move(r));
    pivots_.push_back(piv);
  } else {
    Vector r = residual(v);
    std::size_t piv = 0;
    while (piv < dim_ && Field::is_zero(r[piv])) ++piv;
    if (piv == dim_) return false;
    Scalar inv = field_.inv(r[piv]);
    for (auto& x : r) x = field_.mul(inv, x);
    for (auto& row : echelon_) {
      if (Field::is_zero(row[piv])) continue;
      Scalar c = row[piv];
      for (std::size_t j = 0; j < dim_; ++j) row[j] = field_.sub(row[j], field_.mul(c, r[j]));
    }
    echelon_.push_back(std::move(r));
    pivots_.push_back(piv);
  }
  Vector stored(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) stored[i] = field_.normalize(v[i]);
  basis_.push_back(std::move(stored));
  return true;
}

std::vector<std::vector<std::string>> to_strings(const Matrix& m) {
  std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = to_string(m(i, j));
  return out;
}

}  // namespace assocvar
