#pragma once
//
// Cyclic Jacobi eigensolver for complex Hermitian matrices.
//
// Each rotation zeroes one off-diagonal pair (p,q). The complex entry a_pq =
// |a_pq| e^{iφ} is first made real by the phase D = diag(1, e^{-iφ}), then
// annihilated with the classical real rotation, so the accumulated transform
// is U = D·R. Convergence is declared once the off-diagonal Frobenius mass is
// below tol·‖H‖_F.
//

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "framelab/error.hpp"
#include "framelab/matrix.hpp"

namespace framelab {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // nonincreasing
  ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
};

inline constexpr double hermitian_input_tol = 1e-12;
inline constexpr int jacobi_max_sweeps = 100;

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const complex apq = a(p, q);
  const double mag = std::abs(apq);
  const complex phase = apq / mag;  // e^{iφ}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // U_pp = c, U_pq = s, U_qp = -s e^{-iφ}, U_qq = c e^{-iφ}
  const complex upp = c, upq = s;
  const complex uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {  // A <- A U
    const complex akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // A <- U* A
    const complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {  // V <- V U
    const complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
}

}  // namespace detail

// Eigen-decomposition of a Hermitian matrix. The input is accepted when
// max|H − H*| <= 1e-12·max(1, max|H|) and is symmetrized before iterating.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix& h, double tol = 1e-14) {
  if (!h.is_square()) throw dimension_error("hermitian_eigen: non-square " + h.shape());
  const double defect = hermitian_defect(h);
  if (defect > hermitian_input_tol * std::max(1.0, max_abs(h)))
    throw not_hermitian_error("hermitian_eigen: input not Hermitian, defect " + std::to_string(defect),
                              defect);

  const std::size_t n = h.rows();
  ComplexMatrix a = (h + h.adjoint()) * complex{0.5};
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double scale = frobenius_norm(a);
  bool converged = scale == 0.0;
  double off = 0.0;
  for (int sweep = 0; !converged && sweep < jacobi_max_sweeps; ++sweep) {
    off = detail::off_diagonal_norm(a);
    if (off <= tol * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Entries already below the rounding level of both diagonal entries.
        const double app = std::abs(a(p, p).real()), aqq = std::abs(a(q, q).real());
        if (sweep > 3 && app + 100.0 * mag == app && aqq + 100.0 * mag == aqq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        detail::jacobi_rotate(a, v, p, q);
      }
  }
  if (!converged) {
    off = detail::off_diagonal_norm(a);
    if (off > tol * scale)
      throw convergence_error("hermitian_eigen: no convergence after " +
                                  std::to_string(jacobi_max_sweeps) + " sweeps, relative residual " +
                                  std::to_string(off / scale),
                              off / scale);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

// f(H) = V diag(f(μ)) V* for a real function f.
template <typename Fn>
ComplexMatrix spectral_apply(const EigenDecomposition& e, Fn&& f) {
  const std::size_t n = e.eigenvalues.size();
  ComplexMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const complex vik = e.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.eigenvectors(j, k));
    }
  }
  return r;
}

}  // namespace framelab
