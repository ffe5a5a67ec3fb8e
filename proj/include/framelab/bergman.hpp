#pragma once
//
// Bergman space on the unit disk truncated to the monomials z^0..z^{d−1}.
//
// e_n(z) = √(n+1) z^n is orthonormal for the normalized area measure dA, and
// K(z, w) = 1/(1 − z w̄)² = Σ (n+1) (z w̄)^n, so K_w has coefficients
// √(n+1) w̄^n and k_w = (1 − |w|²) K_w.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "framelab/error.hpp"
#include "framelab/frames.hpp"
#include "framelab/matrix.hpp"
#include "framelab/quadrature.hpp"

namespace framelab {

struct TruncatedBergman {
  std::size_t degree;

  explicit TruncatedBergman(std::size_t d) : degree(d) {
    if (d == 0) throw domain_error("TruncatedBergman: degree must be >= 1");
  }

  std::vector<double> onb_scaling() const {
    std::vector<double> s(degree);
    for (std::size_t n = 0; n < degree; ++n) s[n] = std::sqrt(double(n + 1));
    return s;
  }

  // f(z) for f given by coefficients in the monomial ONB.
  complex evaluate(std::span<const complex> coeffs, complex z) const {
    if (coeffs.size() != degree) throw dimension_error("TruncatedBergman::evaluate: coefficient length");
    complex s{}, zn{1.0};
    for (std::size_t n = 0; n < degree; ++n, zn *= z) s += coeffs[n] * std::sqrt(double(n + 1)) * zn;
    return s;
  }
};

namespace detail {

inline void require_in_disk(complex z, const char* who) {
  if (!(std::abs(z) < 1.0)) throw domain_error(std::string(who) + ": point outside the open unit disk");
}

}  // namespace detail

inline complex bergman_kernel(complex z, complex w) {
  detail::require_in_disk(z, "bergman_kernel");
  detail::require_in_disk(w, "bergman_kernel");
  const complex q = 1.0 - z * std::conj(w);
  return 1.0 / (q * q);
}

// Coefficients √(n+1) w̄^n of K_w.
inline ComplexVector kernel_vector(complex w, std::size_t d) {
  detail::require_in_disk(w, "kernel_vector");
  if (d == 0) throw domain_error("kernel_vector: d must be >= 1");
  ComplexVector c(d);
  complex wn{1.0};
  for (std::size_t n = 0; n < d; ++n, wn *= std::conj(w)) c[n] = std::sqrt(double(n + 1)) * wn;
  return c;
}

// Coefficients (1 − |w|²) √(n+1) w̄^n of k_w.
inline ComplexVector kernel_coefficients(complex w, std::size_t d) {
  ComplexVector c = kernel_vector(w, d);
  const double s = 1.0 - std::norm(w);
  for (auto& z : c) z *= s;
  return c;
}

// ‖k_w‖² − Σ_{n<d} |coefficient|² = (1−x)² Σ_{n>=d} (n+1) x^n = x^d ((d+1) − d x), x = |w|².
inline double kernel_tail(complex w, std::size_t d) {
  detail::require_in_disk(w, "kernel_tail");
  const double x = std::norm(w);
  return std::pow(x, double(d)) * (double(d + 1) - double(d) * x);
}

// |(z − w) / (1 − z̄ w)|
inline double pseudo_hyperbolic(complex z, complex w) {
  detail::require_in_disk(z, "pseudo_hyperbolic");
  detail::require_in_disk(w, "pseudo_hyperbolic");
  return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

// β = ½ log((1+ρ)/(1−ρ)) = atanh ρ
inline double bergman_metric(complex z, complex w) { return std::atanh(pseudo_hyperbolic(z, w)); }

// φ_a(w) = (w − a) / (1 − ā w)
inline complex mobius(complex a, complex w) {
  detail::require_in_disk(a, "mobius");
  return (w - a) / (1.0 - std::conj(a) * w);
}

// ---------------------------------------------------------------------------

struct SamplingLattice {
  std::vector<complex> points;
  double separation = 0.0;
  double min_pairwise = HUGE_VAL;  // brute-force minimum of β over distinct pairs
  std::size_t rings = 0;
};

inline double min_pairwise_distance(std::span<const complex> pts) {
  double m = HUGE_VAL;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) m = std::min(m, bergman_metric(pts[i], pts[j]));
  return m;
}

namespace detail {

// Smallest angle θ with β(r, r e^{iθ}) >= sep, or NaN if even θ = π is too close.
inline double ring_angle(double r, double sep) {
  const double target = std::tanh(sep);
  auto rho = [r](double t) {
    const complex e = std::polar(1.0, t);
    return std::abs(r * (1.0 - e) / (1.0 - r * r * e));
  };
  if (rho(std::numbers::pi) < target) return std::nan("");
  double lo = 0.0, hi = std::numbers::pi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rho(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace detail

// Concentric rings at Bergman radii k·sep, each with as many equally spaced
// points as the separation allows, plus the origin. Alternate rings are
// rotated by half a step.
inline SamplingLattice r_lattice(double separation, double rmax) {
  if (!(separation > 0.0)) throw domain_error("r_lattice: separation must be > 0");
  if (!(rmax >= 0.0 && rmax < 1.0)) throw domain_error("r_lattice: rmax must lie in [0, 1)");
  // Slight inflation keeps the constructed distances strictly above the target after rounding.
  const double sep = separation * (1.0 + 1e-9);
  SamplingLattice lat;
  lat.separation = separation;
  lat.points.push_back(0.0);
  for (std::size_t k = 1;; ++k) {
    const double r = std::tanh(double(k) * sep);
    if (r > rmax) break;
    ++lat.rings;
    const double theta = detail::ring_angle(r, sep);
    const std::size_t m =
        std::isnan(theta) ? 1 : std::max<std::size_t>(1, std::size_t(std::floor(2.0 * std::numbers::pi / theta)));
    const double offset = (k % 2 == 0) ? std::numbers::pi / double(m) : 0.0;
    for (std::size_t j = 0; j < m; ++j)
      lat.points.push_back(std::polar(r, offset + 2.0 * std::numbers::pi * double(j) / double(m)));
  }
  lat.min_pairwise = min_pairwise_distance(lat.points);
  if (lat.points.size() > 1 && lat.min_pairwise < separation)
    throw error("r_lattice: separation check failed (" + std::to_string(lat.min_pairwise) + ")");
  return lat;
}

struct SamplingFrameReport {
  Frame frame;
  double lower_bound;
  double upper_bound;
  double condition;
  double max_tail;  // largest truncation defect ‖k_w‖² − ‖P_d k_w‖² over the lattice
};

inline SamplingFrameReport sampling_frame(const SamplingLattice& lattice, std::size_t d) {
  if (lattice.points.empty()) throw domain_error("sampling_frame: empty lattice");
  if (d == 0) throw domain_error("sampling_frame: d must be >= 1");
  std::vector<ComplexVector> vs;
  double tail = 0.0;
  for (const complex w : lattice.points) {
    vs.push_back(kernel_coefficients(w, d));
    tail = std::max(tail, kernel_tail(w, d));
  }
  try {
    Frame f = make_frame(vs, d, default_spanning_tol, "lattice");
    const double lo = f.lower_bound(), hi = f.upper_bound();
    return {std::move(f), lo, hi, hi / lo, tail};
  } catch (const not_a_frame_error& e) {
    throw not_a_frame_error("sampling_frame: " + std::to_string(lattice.points.size()) +
                                " lattice points do not give a frame at degree " + std::to_string(d) +
                                " (lambda_min = " + std::to_string(e.lambda_min()) + ")",
                            e.lambda_min());
  }
}

// ---------------------------------------------------------------------------

struct DiskQuadrature {
  std::vector<complex> nodes;
  std::vector<double> weights_dA;
  double rmax = 0.0;

  // Weights for dλ = dA / (1 − |w|²)².
  std::vector<double> weights_dlambda() const {
    std::vector<double> w(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double s = 1.0 - std::norm(nodes[k]);
      w[k] = weights_dA[k] / (s * s);
    }
    return w;
  }

  std::size_t size() const noexcept { return nodes.size(); }
};

// Gauss-Legendre in s = r² on [0, rmax²] times the trapezoid rule in angle.
// dA = (1/π) r dr dθ = (1/2π) ds dθ. rmax = 1 is allowed; every node stays interior.
inline DiskQuadrature disk_quadrature(std::size_t n_radial, std::size_t n_angular, double rmax) {
  if (n_radial == 0 || n_angular == 0) throw domain_error("disk_quadrature: counts must be >= 1");
  if (!(rmax > 0.0 && rmax <= 1.0)) throw domain_error("disk_quadrature: rmax must lie in (0, 1]");
  const GaussLegendreRule gl = gauss_legendre(n_radial);
  const double smax = rmax * rmax;
  DiskQuadrature q;
  q.rmax = rmax;
  q.nodes.reserve(n_radial * n_angular);
  q.weights_dA.reserve(n_radial * n_angular);
  for (std::size_t i = 0; i < n_radial; ++i) {
    const double s = 0.5 * smax * (gl.nodes[i] + 1.0);
    const double r = std::sqrt(s);
    const double w = smax * gl.weights[i] / (2.0 * double(n_angular));
    for (std::size_t j = 0; j < n_angular; ++j) {
      q.nodes.push_back(std::polar(r, 2.0 * std::numbers::pi * double(j) / double(n_angular)));
      q.weights_dA.push_back(w);
    }
  }
  return q;
}

// Angular points needed for the trapezoid rule to be exact on the degree-d integrands.
inline std::size_t default_angular_points(std::size_t d) { return std::max<std::size_t>(64, 4 * d); }

namespace detail {

inline void require_bergman_operator(const ComplexMatrix& t, std::size_t d, const char* who) {
  if (!t.is_square() || t.rows() != d)
    throw dimension_error(std::string(who) + ": operator " + t.shape() + " vs degree " + std::to_string(d));
}

}  // namespace detail

// ∫ ‖T k_w‖^p dλ(w) over |w| <= rmax.
inline double integral_criterion(const ComplexMatrix& t, double p, const DiskQuadrature& quad, std::size_t d) {
  detail::require_bergman_operator(t, d, "integral_criterion");
  if (!(p > 0.0)) throw domain_error("integral_criterion: p must be > 0");
  const std::vector<double> wl = quad.weights_dlambda();
  std::vector<double> terms(quad.size());
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const double v = norm(t * kernel_coefficients(quad.nodes[k], d));
    terms[k] = (v > 0.0 ? std::pow(v, p) : 0.0) * wl[k];
  }
  return pairwise_sum(terms);
}

// Σ_{n<d} ‖T e_n‖² rmax^{2n+2}: exact value of ∫_{|w|<=rmax} ‖T K_w‖² dA.
inline double hs_closed_form(const ComplexMatrix& t, double rmax) {
  double s = 0.0;
  for (std::size_t n = 0; n < t.cols(); ++n) s += norm_sq(t.column(n)) * std::pow(rmax, 2.0 * double(n + 1));
  return s;
}

struct HsIdentityReport {
  double dlambda_integral = 0.0;    // ∫ ‖T k_w‖² dλ
  double dA_integral = 0.0;         // ∫ ‖T K_w‖² dA
  double identity_defect = 0.0;     // relative difference of the two integrals
  double pointwise_defect = 0.0;    // max relative difference of the integrands
  double closed_form = 0.0;         // Σ ‖T e_n‖² rmax^{2n+2}
  double closed_form_defect = 0.0;  // relative difference quadrature vs closed form
  double hs_norm_sq = 0.0;          // Σ ‖T e_n‖²
  double truncation_gap = 0.0;      // hs_norm_sq − closed_form (mass outside rmax)
  bool passed = true;
};

inline HsIdentityReport hs_identity_check(const ComplexMatrix& t, const DiskQuadrature& quad, std::size_t d,
                                          double identity_tol = 1e-10) {
  detail::require_bergman_operator(t, d, "hs_identity_check");
  HsIdentityReport r;
  const std::vector<double> wl = quad.weights_dlambda();
  std::vector<double> a(quad.size()), b(quad.size());
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const complex w = quad.nodes[k];
    const double small = norm_sq(t * kernel_coefficients(w, d));
    const double big = norm_sq(t * kernel_vector(w, d));
    const double s = 1.0 - std::norm(w);
    a[k] = small * wl[k];
    b[k] = big * quad.weights_dA[k];
    const double lhs = small / (s * s);
    r.pointwise_defect = std::max(r.pointwise_defect, std::abs(lhs - big) / std::max({lhs, big, 1e-300}));
  }
  r.dlambda_integral = pairwise_sum(a);
  r.dA_integral = pairwise_sum(b);
  r.identity_defect = std::abs(r.dlambda_integral - r.dA_integral) /
                      std::max({r.dlambda_integral, r.dA_integral, 1e-300});
  r.closed_form = hs_closed_form(t, quad.rmax);
  r.closed_form_defect = std::abs(r.dA_integral - r.closed_form) / std::max(r.closed_form, 1e-300);
  for (std::size_t n = 0; n < d; ++n) r.hs_norm_sq += norm_sq(t.column(n));
  r.truncation_gap = r.hs_norm_sq - r.closed_form;
  // The quadrature may not exceed ‖T‖₂², and may fall short of it only by the mass outside rmax.
  const double slack = identity_tol * std::max(1.0, r.hs_norm_sq);
  const bool enclosed = r.dA_integral <= r.hs_norm_sq + slack && r.dA_integral >= r.closed_form - slack;
  r.passed = r.identity_defect <= identity_tol && r.pointwise_defect <= identity_tol && enclosed;
  return r;
}

struct LatticeChainReport {
  double lattice_sum = 0.0;  // Σ_n ‖T k_{w_n}‖^p
  double integral = 0.0;     // ∫ ‖T k_w‖^p dλ over |w| <= rmax
  double constant = 0.0;     // lattice_sum / integral
  std::size_t points = 0;
};

inline LatticeChainReport lattice_chain(const ComplexMatrix& t, double p, const SamplingLattice& lattice,
                                        const DiskQuadrature& quad, std::size_t d) {
  detail::require_bergman_operator(t, d, "lattice_chain");
  LatticeChainReport r;
  std::vector<double> terms;
  for (const complex w : lattice.points) {
    const double v = norm(t * kernel_coefficients(w, d));
    terms.push_back(v > 0.0 ? std::pow(v, p) : 0.0);
  }
  r.lattice_sum = pairwise_sum(terms);
  r.integral = integral_criterion(t, p, quad, d);
  r.constant = r.integral > 0.0 ? r.lattice_sum / r.integral : 0.0;
  r.points = lattice.points.size();
  return r;
}

// ---------------------------------------------------------------------------

struct SubharmonicityReport {
  double min_laplacian = HUGE_VAL;
  complex argmin{};
  double max_f = 0.0;
  double tolerance = 0.0;
  double grid_step = 0.0;
  std::size_t centers = 0;
  bool passed = true;
};

inline constexpr double subharmonic_machine_factor = 1.0;

inline double subharmonic_tolerance(double max_f, double grid_step) {
  return 1e-6 * (1.0 + max_f) * (1.0 + 1.0 / (grid_step * grid_step)) * subharmonic_machine_factor;
}

// Five-point Laplacian of F(w) = ‖T K_w‖^p on the grid h·Z² ∩ {|w| <= rmax},
// at every grid point whose whole stencil lies in that disk.
inline SubharmonicityReport subharmonicity_check(const ComplexMatrix& t, double p, double grid_step, double rmax,
                                                 std::size_t d) {
  detail::require_bergman_operator(t, d, "subharmonicity_check");
  if (!(p > 0.0)) throw domain_error("subharmonicity_check: p must be > 0");
  if (!(rmax > 0.0 && rmax < 1.0)) throw domain_error("subharmonicity_check: rmax must lie in (0, 1)");
  if (!(grid_step > 0.0) || grid_step >= rmax)
    throw domain_error("subharmonicity_check: grid_step must lie in (0, rmax); stencil leaves the domain");

  const long m = static_cast<long>(std::floor(rmax / grid_step));
  const std::size_t side = std::size_t(2 * m + 1);
  auto inside = [&](long i, long j) {
    return std::hypot(double(i) * grid_step, double(j) * grid_step) <= rmax;
  };
  std::vector<double> f(side * side, std::nan(""));
  SubharmonicityReport r;
  r.grid_step = grid_step;
  for (long i = -m; i <= m; ++i)
    for (long j = -m; j <= m; ++j) {
      if (!inside(i, j)) continue;
      const complex w{double(i) * grid_step, double(j) * grid_step};
      const double v = norm(t * kernel_vector(w, d));
      const double fv = v > 0.0 ? std::pow(v, p) : 0.0;
      f[std::size_t(i + m) * side + std::size_t(j + m)] = fv;
      r.max_f = std::max(r.max_f, fv);
    }
  auto at = [&](long i, long j) { return f[std::size_t(i + m) * side + std::size_t(j + m)]; };
  const double h2 = grid_step * grid_step;
  for (long i = -m + 1; i < m; ++i)
    for (long j = -m + 1; j < m; ++j) {
      if (!inside(i, j) || !inside(i + 1, j) || !inside(i - 1, j) || !inside(i, j + 1) || !inside(i, j - 1))
        continue;
      const double lap = (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * at(i, j)) / h2;
      ++r.centers;
      if (lap < r.min_laplacian) {
        r.min_laplacian = lap;
        r.argmin = {double(i) * grid_step, double(j) * grid_step};
      }
    }
  if (r.centers == 0) throw domain_error("subharmonicity_check: no interior stencil fits inside rmax");
  r.tolerance = subharmonic_tolerance(r.max_f, grid_step);
  r.passed = r.min_laplacian >= -r.tolerance;
  return r;
}

}  // namespace framelab
