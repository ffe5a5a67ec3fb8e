#pragma once
//
// Singular values, Schatten norms and the small operator decompositions
// built on top of the Hermitian eigensolver.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "framelab/eigen.hpp"
#include "framelab/error.hpp"
#include "framelab/matrix.hpp"

namespace framelab {

// Canonical decomposition T = Σ λ_n ⟨·, e_n⟩ σ_n.
struct SpectralData {
  std::vector<double> singular_values;  // nonincreasing, length min(rows, cols)
  ComplexMatrix left_vectors;           // rows x rows unitary, columns σ_n
  ComplexMatrix right_vectors;          // cols x cols unitary, columns e_n

  ComplexMatrix reconstruct() const {
    ComplexMatrix t(left_vectors.rows(), right_vectors.rows());
    for (std::size_t n = 0; n < singular_values.size(); ++n) {
      const double s = singular_values[n];
      if (s == 0.0) continue;
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const complex li = left_vectors(i, n) * s;
        for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) += li * std::conj(right_vectors(j, n));
      }
    }
    return t;
  }
};

struct SelfAdjointParts {
  ComplexMatrix t1;  // (T + T*) / 2
  ComplexMatrix t2;  // (T − T*) / (2i)
};

// S = (S1 − S2) + i(S3 − S4), each part positive semidefinite.
struct PositiveParts {
  std::array<ComplexMatrix, 4> parts;
};

inline constexpr double rank_tol_factor = 1e-12;

namespace detail {

inline void require_finite(const ComplexMatrix& t, const char* who) {
  for (const auto& z : t.entries())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw domain_error(std::string(who) + ": non-finite entry");
}

// Orthonormalizes `basis` columns [0, filled) in place (two passes of modified
// Gram-Schmidt) and completes the remaining columns from the standard basis.
inline void complete_unitary(ComplexMatrix& basis, std::size_t filled) {
  const std::size_t n = basis.rows();
  auto project_out = [&](ComplexVector& x, std::size_t upto) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < upto; ++k) {
        complex c{};
        for (std::size_t i = 0; i < n; ++i) c += std::conj(basis(i, k)) * x[i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= c * basis(i, k);
      }
  };
  for (std::size_t k = 0; k < filled; ++k) {
    ComplexVector x = basis.column(k);
    project_out(x, k);
    const double nx = norm(x);
    for (auto& z : x) z /= nx;
    basis.set_column(k, x);
  }
  for (std::size_t k = filled; k < n; ++k) {
    // Pick the standard basis vector with the largest residual.
    ComplexVector best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < n; ++e) {
      ComplexVector x = unit_vector(n, e);
      project_out(x, k);
      const double nx = norm(x);
      if (nx > best_norm) {
        best_norm = nx;
        best = std::move(x);
      }
    }
    for (auto& z : best) z /= best_norm;
    basis.set_column(k, best);
  }
}

struct GramSpectrum {
  std::vector<double> values;  // ‖T v_k‖, nonincreasing
  ComplexMatrix vectors;       // columns v_k (eigenvectors of T*T)
};

// Right singular structure of T from the eigenvectors of T*T. Singular values
// are measured as ‖T v_k‖, which equals sqrt(max(μ_k, 0)) in exact arithmetic
// but keeps absolute accuracy eps·λ_1 for (near) null directions. Values at or
// below max(m, n)·eps·λ_1 are indistinguishable from rounding and set to 0;
// otherwise they would dominate Σ λ^p for small p.
inline GramSpectrum gram_spectrum(const ComplexMatrix& t) {
  const ComplexMatrix ev_input = t.adjoint() * t;
  EigenDecomposition e = hermitian_eigen(ev_input);
  const std::size_t n = t.cols();
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k) vals[k] = norm(t * e.eigenvectors.column(k));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return vals[i] > vals[j]; });
  GramSpectrum g{std::vector<double>(n), ComplexMatrix(n, n)};
  const double floor = n == 0 ? 0.0
                              : double(std::max(t.rows(), t.cols())) * std::numeric_limits<double>::epsilon() *
                                    vals[order[0]];
  for (std::size_t k = 0; k < n; ++k) {
    g.values[k] = vals[order[k]] > floor ? vals[order[k]] : 0.0;
    for (std::size_t i = 0; i < n; ++i) g.vectors(i, k) = e.eigenvectors(i, order[k]);
  }
  return g;
}

}  // namespace detail

// Singular values only, length min(rows, cols), nonincreasing. Works on the
// smaller Gram matrix, so wide synthesis matrices stay cheap.
inline std::vector<double> singular_values(const ComplexMatrix& t) {
  detail::require_finite(t, "singular_values");
  const bool wide = t.rows() < t.cols();
  auto g = detail::gram_spectrum(wide ? t.adjoint() : t);
  g.values.resize(std::min(t.rows(), t.cols()));
  return g.values;
}

inline SpectralData svd(const ComplexMatrix& t) {
  detail::require_finite(t, "svd");
  auto g = detail::gram_spectrum(t);
  const std::size_t m = t.rows(), n = t.cols(), r = std::min(m, n);
  const double rank_tol = rank_tol_factor * (g.values.empty() ? 0.0 : g.values[0]);

  ComplexMatrix left(m, m);
  std::size_t filled = 0;
  for (std::size_t k = 0; k < r && g.values[k] > rank_tol; ++k, ++filled) {
    const ComplexVector tv = t * g.vectors.column(k);
    left.set_column(k, scaled(tv, 1.0 / g.values[k]));
  }
  detail::complete_unitary(left, filled);

  std::vector<double> sv(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(r));
  return SpectralData{std::move(sv), std::move(left), std::move(g.vectors)};
}

inline double operator_norm(const ComplexMatrix& t) { return singular_values(t).front(); }

// Σ λ_n^p over all singular values.
inline double schatten_power_sum(std::span<const double> sv, double p) {
  if (!(p > 0.0)) throw domain_error("schatten norm: p must be > 0, got " + std::to_string(p));
  double s = 0.0;
  for (double l : sv)
    if (l > 0.0) s += std::pow(l, p);
  return s;
}

inline double schatten_power_sum(const ComplexMatrix& t, double p) {
  if (!(p > 0.0)) throw domain_error("schatten norm: p must be > 0, got " + std::to_string(p));
  return schatten_power_sum(singular_values(t), p);
}

// ‖T‖_p = (Σ λ_n^p)^{1/p}
inline double schatten_norm(const ComplexMatrix& t, double p) {
  return std::pow(schatten_power_sum(t, p), 1.0 / p);
}

// Positive square root; eigenvalues in [−tol·max(1, μ_max), 0) are clamped to 0.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& s, double tol = 1e-12) {
  const EigenDecomposition e = hermitian_eigen(s);
  const double floor = -tol * std::max(1.0, std::abs(e.eigenvalues.front()));
  if (e.eigenvalues.back() < floor)
    throw not_psd_error("psd_sqrt: eigenvalue " + std::to_string(e.eigenvalues.back()) + " < 0",
                        e.eigenvalues.back());
  return spectral_apply(e, [](double mu) { return std::sqrt(std::max(mu, 0.0)); });
}

// T^p for Hermitian PSD T, formed in the eigenbasis.
inline ComplexMatrix psd_power(const ComplexMatrix& s, double p, double tol = 1e-12) {
  if (!(p > 0.0)) throw domain_error("psd_power: p must be > 0");
  const EigenDecomposition e = hermitian_eigen(s);
  const double floor = -tol * std::max(1.0, std::abs(e.eigenvalues.front()));
  if (e.eigenvalues.back() < floor)
    throw not_psd_error("psd_power: eigenvalue " + std::to_string(e.eigenvalues.back()) + " < 0",
                        e.eigenvalues.back());
  return spectral_apply(e, [p](double mu) { return mu > 0.0 ? std::pow(mu, p) : 0.0; });
}

inline bool is_psd(const ComplexMatrix& s, double tol = 1e-10) {
  if (!s.is_square()) return false;
  if (hermitian_defect(s) > hermitian_input_tol * std::max(1.0, max_abs(s))) return false;
  const auto ev = hermitian_eigen(s).eigenvalues;
  return ev.back() >= -tol * std::max(1.0, std::abs(ev.front()));
}

inline SelfAdjointParts self_adjoint_parts(const ComplexMatrix& t) {
  if (!t.is_square()) throw dimension_error("self_adjoint_parts: non-square " + t.shape());
  const ComplexMatrix ta = t.adjoint();
  return {(t + ta) * complex{0.5}, (t - ta) * complex{0.0, -0.5}};
}

inline PositiveParts positive_four_parts(const ComplexMatrix& s) {
  const SelfAdjointParts sa = self_adjoint_parts(s);
  const auto e1 = hermitian_eigen(sa.t1);
  const auto e2 = hermitian_eigen(sa.t2);
  auto pos = [](double mu) { return std::max(mu, 0.0); };
  auto neg = [](double mu) { return std::max(-mu, 0.0); };
  return {{spectral_apply(e1, pos), spectral_apply(e1, neg), spectral_apply(e2, pos),
           spectral_apply(e2, neg)}};
}

// tr(TS) = Σ_n ⟨TS e_n, e_n⟩
inline complex trace_pairing(const ComplexMatrix& t, const ComplexMatrix& s) {
  if (!t.is_square() || !s.is_square() || t.rows() != s.rows())
    throw dimension_error("trace_pairing: " + t.shape() + " vs " + s.shape());
  return trace(t * s);
}

}  // namespace framelab
