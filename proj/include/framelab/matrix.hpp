#pragma once
//
// Dense complex matrices and vectors.
//
// ComplexMatrix is a plain value type: row-major storage, no expression
// templates, no aliasing tricks. All sizes used in this project are small
// (d <= 64 for square operators, a few thousand columns for frames).
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "framelab/error.hpp"

namespace framelab {

using complex = std::complex<double>;
using ComplexVector = std::vector<complex>;

inline constexpr complex imag_unit{0.0, 1.0};

class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw dimension_error("ComplexMatrix: rows and cols must be >= 1");
    data_.assign(rows * cols, complex{});
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw dimension_error("ComplexMatrix: rows and cols must be >= 1");
    if (data_.size() != rows * cols)
      throw dimension_error("ComplexMatrix: entries length " + std::to_string(data_.size()) +
                            " != rows*cols " + std::to_string(rows * cols));
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error("ComplexMatrix: non-finite entry");
  }

  // Row-wise literal, e.g. from_rows({{2, 1}, {1, 2}}).
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<complex> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw dimension_error("from_rows: ragged rows");
      e.insert(e.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(e));
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const complex> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  // Matrix whose columns are the given vectors (all of length `rows`).
  static ComplexMatrix from_columns(std::span<const ComplexVector> columns, std::size_t rows) {
    if (columns.empty()) throw dimension_error("from_columns: no columns");
    ComplexMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows)
        throw dimension_error("from_columns: column " + std::to_string(j) + " has length " +
                              std::to_string(columns[j].size()) + ", expected " +
                              std::to_string(rows));
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const complex> entries() const noexcept { return data_; }

  ComplexVector column(std::size_t j) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_column(std::size_t j, std::span<const complex> v) {
    if (v.size() != rows_) throw dimension_error("set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix a(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) a(j, i) = std::conj((*this)(i, j));
    return a;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw dimension_error("matrix product: " + a.shape() + " * " + b.shape());
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex aik = a(i, k);
        if (aik == complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const complex> x) {
    if (a.cols_ != x.size()) throw dimension_error("matrix-vector product: size mismatch");
    ComplexVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      complex s{};
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  friend ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
    return a * std::span<const complex>(x);
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw dimension_error(std::string("matrix ") + op + ": " + shape() + " vs " + o.shape());
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<complex> data_;
};

// ⟨x, y⟩ = Σ x_i conj(y_i): linear in the first slot.
inline complex inner(std::span<const complex> x, std::span<const complex> y) {
  if (x.size() != y.size()) throw dimension_error("inner: size mismatch");
  complex s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline double norm_sq(std::span<const complex> x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return s;
}

inline double norm(std::span<const complex> x) { return std::sqrt(norm_sq(x)); }

inline ComplexVector scaled(std::span<const complex> x, complex s) {
  ComplexVector y(x.begin(), x.end());
  for (auto& z : y) z *= s;
  return y;
}

inline ComplexVector unit_vector(std::size_t dim, std::size_t k) {
  ComplexVector e(dim);
  e.at(k) = 1.0;
  return e;
}

inline double frobenius_norm(const ComplexMatrix& m) { return norm(m.entries()); }

inline double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (const auto& z : m.entries()) r = std::max(r, std::abs(z));
  return r;
}

// max |m_ij - conj(m_ji)|; +inf for non-square input.
inline double hermitian_defect(const ComplexMatrix& m) {
  if (!m.is_square()) return HUGE_VAL;
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

inline complex trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw dimension_error("trace: non-square " + m.shape());
  complex s{};
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

// Relative Frobenius distance ‖a − b‖ / max(‖b‖, tiny).
inline double relative_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double nb = frobenius_norm(b);
  return frobenius_norm(a - b) / std::max(nb, 1e-300);
}

// x x*
inline ComplexMatrix outer(std::span<const complex> x) {
  ComplexMatrix m(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = x[i] * std::conj(x[j]);
  return m;
}

}  // namespace framelab
