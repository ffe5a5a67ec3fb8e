#pragma once
//
// Reference computations used only by the tests. They share no numerical
// code with the library: plain nested vectors, different algorithms.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "framelab/matrix.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = std::vector<std::vector<cd>>;  // Mat[i][j], row i

inline Mat to_mat(const framelab::ComplexMatrix& m) {
  Mat a(m.rows(), std::vector<cd>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

// One-sided (Hestenes) Jacobi: orthogonalize columns by plane rotations;
// the final column norms are the singular values.
inline std::vector<double> singular_values(const framelab::ComplexMatrix& m) {
  Mat a = to_mat(m);
  const std::size_t rows = a.size(), cols = a[0].size();
  if (cols > rows) {  // work with the adjoint so there are at most `rows` columns
    Mat b(cols, std::vector<cd>(rows));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) b[j][i] = std::conj(a[i][j]);
    a = std::move(b);
  }
  const std::size_t r = a.size(), n = a[0].size();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        long double alpha = 0, beta = 0;
        std::complex<long double> gamma = 0;
        for (std::size_t k = 0; k < r; ++k) {
          alpha += std::norm(std::complex<long double>(a[k][i]));
          beta += std::norm(std::complex<long double>(a[k][j]));
          gamma += std::conj(std::complex<long double>(a[k][i])) * std::complex<long double>(a[k][j]);
        }
        const long double g = std::abs(gamma);
        if (g == 0 || g <= 1e-17L * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const std::complex<long double> ph = gamma / g;
        const long double zeta = (beta - alpha) / (2 * g);
        const long double t = (zeta >= 0 ? 1 : -1) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const long double c = 1 / std::sqrt(1 + t * t), s = c * t;
        for (std::size_t k = 0; k < r; ++k) {
          const std::complex<long double> ai = a[k][i];
          const std::complex<long double> bj = std::complex<long double>(a[k][j]) * std::conj(ph);
          a[k][i] = cd(c * ai - s * bj);
          a[k][j] = cd(s * ai + c * bj);
        }
      }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    long double s = 0;
    for (std::size_t k = 0; k < r; ++k) s += std::norm(std::complex<long double>(a[k][j]));
    sv[j] = double(std::sqrt(s));
  }
  std::sort(sv.rbegin(), sv.rend());
  sv.resize(std::min(m.rows(), m.cols()));
  return sv;
}

inline double schatten_pp(const std::vector<double>& sv, double p) {
  long double s = 0;
  for (double x : sv)
    if (x > 0) s += std::pow((long double)x, (long double)p);
  return double(s);
}

// Entrywise trace of a product: Σ_ij T_ij S_ji.
inline cd trace_product(const framelab::ComplexMatrix& t, const framelab::ComplexMatrix& s) {
  cd acc{};
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) acc += t(i, j) * s(j, i);
  return acc;
}

// Σ_{n=1}^{N} term(n) in long double.
template <typename F>
double long_sum(std::size_t N, F&& term) {
  long double s = 0;
  for (std::size_t n = 1; n <= N; ++n) s += term(n);
  return double(s);
}

inline long double log_weight(std::size_t n) {
  return 1.0L / (std::sqrt((long double)n) * std::log((long double)n + 1.0L));
}

// Σ_{n<=N} ‖T e_n‖^p for T = h h*, h_n = log_weight(n): evaluated term by term.
inline double rank_one_sum(std::size_t N, double p) {
  long double hn = 0;
  for (std::size_t n = 1; n <= N; ++n) hn += log_weight(n) * log_weight(n);
  hn = std::sqrt(hn);
  long double s = 0;
  for (std::size_t n = 1; n <= N; ++n) s += std::pow(log_weight(n) * hn, (long double)p);
  return double(s);
}

// ∫_{|w|<=r} |w|^{2n} dA with normalized area, by composite Simpson in the radius:
// (1/π)·2π ∫_0^r ρ^{2n+1} dρ.
inline double radial_moment(std::size_t n, double r, std::size_t panels = 20000) {
  const double h = r / double(panels);
  long double s = 0;
  for (std::size_t k = 0; k <= panels; ++k) {
    const double x = h * double(k);
    const long double f = std::pow((long double)x, (long double)(2 * n + 1));
    const int c = (k == 0 || k == panels) ? 1 : (k % 2 ? 4 : 2);
    s += c * f;
  }
  return double(2.0L * s * h / 3.0L);
}

}  // namespace oracle
