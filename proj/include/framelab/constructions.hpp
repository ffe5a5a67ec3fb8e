#pragma once
//
// Explicit operators and frames for which the p-regime restrictions of the
// norm formulas are sharp, truncated to finite dimension. Divergence of an
// infinite series is replaced by a growth verdict on its partial sums.
//
// All logarithms are natural.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framelab/criteria.hpp"
#include "framelab/error.hpp"
#include "framelab/frames.hpp"
#include "framelab/matrix.hpp"
#include "framelab/spectral.hpp"

namespace framelab {

enum class Verdict { bounded_trend, divergent_trend };

inline std::string_view to_string(Verdict v) {
  return v == Verdict::bounded_trend ? "bounded_trend" : "divergent_trend";
}

inline constexpr std::array<std::size_t, 4> default_growth_grid{100, 1000, 10000, 100000};

// A series is bounded-like when its last increment on the grid adds less than
// this fraction of the previous partial sum.
inline constexpr double bounded_increment_fraction = 0.01;

struct GrowthSeries {
  std::vector<std::size_t> truncations;
  std::vector<double> partial_sums;
  Verdict verdict = Verdict::bounded_trend;

  // (S_k − S_{k−1}) / S_{k−1}; NaN for the first entry.
  std::vector<double> relative_increments() const {
    std::vector<double> r(partial_sums.size(), std::nan(""));
    for (std::size_t k = 1; k < partial_sums.size(); ++k)
      r[k] = (partial_sums[k] - partial_sums[k - 1]) / partial_sums[k - 1];
    return r;
  }

  // (S_k − S_{k−1}) / (S_{k−1} − S_{k−2}); NaN for the first two entries.
  std::vector<double> increment_ratios() const {
    std::vector<double> r(partial_sums.size(), std::nan(""));
    for (std::size_t k = 2; k < partial_sums.size(); ++k)
      r[k] = (partial_sums[k] - partial_sums[k - 1]) / (partial_sums[k - 1] - partial_sums[k - 2]);
    return r;
  }

  bool nondecreasing() const { return std::is_sorted(partial_sums.begin(), partial_sums.end()); }
};

inline Verdict classify_growth(const std::vector<double>& partial_sums) {
  if (partial_sums.size() < 2) throw domain_error("classify_growth: need at least two truncations");
  const double prev = partial_sums[partial_sums.size() - 2];
  const double last = partial_sums.back();
  return last - prev < bounded_increment_fraction * prev ? Verdict::bounded_trend : Verdict::divergent_trend;
}

namespace detail {

inline void require_grid(std::span<const std::size_t> grid, const char* who) {
  if (grid.size() < 2) throw domain_error(std::string(who) + ": grid needs at least two truncations");
  if (grid.front() == 0) throw domain_error(std::string(who) + ": truncations must be >= 1");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (grid[k] <= grid[k - 1]) throw domain_error(std::string(who) + ": grid must be increasing");
}

// Partial sums of a nonnegative term sequence at the grid truncations.
template <typename Term>
GrowthSeries accumulate_series(std::span<const std::size_t> grid, Term&& term) {
  GrowthSeries g;
  g.truncations.assign(grid.begin(), grid.end());
  double s = 0.0;
  std::size_t n = 1;
  for (std::size_t cut : grid) {
    for (; n <= cut; ++n) s += term(n);
    g.partial_sums.push_back(s);
  }
  g.verdict = classify_growth(g.partial_sums);
  return g;
}

inline double log_weight(std::size_t n) {
  return 1.0 / (std::sqrt(double(n)) * std::log(double(n) + 1.0));
}

}  // namespace detail

// h = Σ e_n / (√n log(n+1)), n = 1..d
inline ComplexVector log_weight_vector(std::size_t d) {
  if (d == 0) throw domain_error("log_weight_vector: d must be >= 1");
  ComplexVector h(d);
  for (std::size_t n = 1; n <= d; ++n) h[n - 1] = detail::log_weight(n);
  return h;
}

// T x = ⟨x, h⟩ h
inline ComplexMatrix rank_one(std::span<const complex> h) {
  if (h.empty() || norm(h) == 0.0) throw domain_error("rank_one: zero vector");
  return outer(h);
}

// Σ_{n<=d} ‖T e_n‖^p for T = rank_one(h_d): ‖h_d‖^p · Σ_{n<=d} (1/(√n log(n+1)))^p.
inline GrowthSeries divergence_demo_sum_norms(double p, std::span<const std::size_t> grid = default_growth_grid) {
  if (!(p > 0.0) || p >= 2.0)
    throw domain_error("divergence_demo_sum_norms: p must lie in (0, 2), got " + std::to_string(p));
  detail::require_grid(grid, "divergence_demo_sum_norms");
  GrowthSeries g;
  g.truncations.assign(grid.begin(), grid.end());
  double h_norm_sq = 0.0, weights = 0.0;
  std::size_t n = 1;
  for (std::size_t cut : grid) {
    for (; n <= cut; ++n) {
      const double w = detail::log_weight(n);
      h_norm_sq += w * w;
      weights += std::pow(w, p);
    }
    g.partial_sums.push_back(std::pow(h_norm_sq, p / 2.0) * weights);
  }
  g.verdict = classify_growth(g.partial_sums);
  return g;
}

// Σ 1/(n log²(n+1)): the convergent neighbour of the rank-one series at p = 2.
inline GrowthSeries comparison_series(std::span<const std::size_t> grid = default_growth_grid) {
  detail::require_grid(grid, "comparison_series");
  return detail::accumulate_series(grid, [](std::size_t n) {
    const double w = detail::log_weight(n);
    return w * w;
  });
}

// ---------------------------------------------------------------------------
// Frame {N_n copies of δ_n e_n} with δ_n^{p−2} = λ_n^ε, N_n = round(1/δ_n²).

enum class LambdaSpec { power, power_log, constant };

inline std::string_view to_string(LambdaSpec s) {
  switch (s) {
    case LambdaSpec::power: return "power";
    case LambdaSpec::power_log: return "power_log";
    case LambdaSpec::constant: return "constant";
  }
  return "?";
}

inline LambdaSpec parse_lambda_spec(std::string_view name) {
  if (name == "power") return LambdaSpec::power;
  if (name == "power_log") return LambdaSpec::power_log;
  if (name == "constant") return LambdaSpec::constant;
  throw domain_error("unknown lambda spec '" + std::string(name) + "'");
}

// power:     n^{−1/p}            in ℓ^q iff q > p
// power_log: (n (1 + log n))^{−1/p}
// constant:  1
inline double lambda_value(LambdaSpec spec, std::size_t n, double p) {
  switch (spec) {
    case LambdaSpec::power: return std::pow(double(n), -1.0 / p);
    case LambdaSpec::power_log: return std::pow(double(n) * (1.0 + std::log(double(n))), -1.0 / p);
    case LambdaSpec::constant: return 1.0;
  }
  return 1.0;
}

inline std::size_t copies_count(double delta) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / (delta * delta))));
}

inline constexpr double copies_count_lower = 0.5;
inline constexpr double copies_count_upper = 2.0;

struct CopiesFrame {
  LambdaSpec lambda_spec = LambdaSpec::power;
  double p = 0.0;
  double epsilon = 0.0;
  std::vector<double> lambda;
  std::vector<double> delta;
  std::vector<std::size_t> counts;
  Frame frame;

  // diag(λ_1, …, λ_n) on the truncated space.
  ComplexMatrix operator_t() const { return ComplexMatrix::diagonal(std::span<const double>(lambda)); }

  // Σ N_n δ_n^p λ_n^p, evaluated term by term.
  double direct_sum() const {
    double s = 0.0;
    for (std::size_t n = 0; n < lambda.size(); ++n)
      s += double(counts[n]) * std::pow(delta[n], p) * std::pow(lambda[n], p);
    return s;
  }

  // Σ (N_n δ_n²) λ_n^{p+ε}
  double dual_sum() const {
    double s = 0.0;
    for (std::size_t n = 0; n < lambda.size(); ++n)
      s += double(counts[n]) * delta[n] * delta[n] * std::pow(lambda[n], p + epsilon);
    return s;
  }
};

inline CopiesFrame copies_frame(LambdaSpec spec, double p, double epsilon, std::size_t n_terms) {
  if (!(p > 2.0)) throw domain_error("copies_frame: p must be > 2, got " + std::to_string(p));
  if (!(epsilon > 0.0)) throw domain_error("copies_frame: epsilon must be > 0");
  if (n_terms == 0) throw domain_error("copies_frame: n_terms must be >= 1");
  std::vector<double> lambda(n_terms), delta(n_terms);
  std::vector<std::size_t> counts(n_terms);
  std::size_t total = 0;
  for (std::size_t n = 0; n < n_terms; ++n) {
    lambda[n] = lambda_value(spec, n + 1, p);
    delta[n] = std::pow(lambda[n], epsilon / (p - 2.0));
    counts[n] = copies_count(delta[n]);
    const double nd = double(counts[n]) * delta[n] * delta[n];
    if (nd < copies_count_lower || nd > copies_count_upper)
      throw domain_error("copies_frame: N_n δ_n² = " + std::to_string(nd) + " outside [1/2, 2] at n = " +
                         std::to_string(n + 1));
    total += counts[n];
  }
  ComplexMatrix v(n_terms, total);
  std::size_t col = 0;
  for (std::size_t n = 0; n < n_terms; ++n)
    for (std::size_t c = 0; c < counts[n]; ++c) v(n, col++) = delta[n];
  Frame f = make_frame(std::move(v), default_spanning_tol,
                       "copies:" + std::string(to_string(spec)) + ":" + std::to_string(n_terms));
  return {spec, p, epsilon, std::move(lambda), std::move(delta), std::move(counts), std::move(f)};
}

struct CopiesGrowth {
  GrowthSeries lambda_p;       // Σ λ_n^p
  GrowthSeries frame_sum;      // Σ N_n δ_n^p λ_n^p = Σ over the frame of ‖T f‖^p
  GrowthSeries lambda_p_eps;   // Σ λ_n^{p+ε}
};

// The three series over a truncation grid, without materializing frames.
inline CopiesGrowth copies_growth(LambdaSpec spec, double p, double epsilon,
                                std::span<const std::size_t> grid = default_growth_grid) {
  if (!(p > 2.0) || !(epsilon > 0.0)) throw domain_error("copies_growth: need p > 2 and epsilon > 0");
  detail::require_grid(grid, "copies_growth");
  CopiesGrowth g;
  g.lambda_p = detail::accumulate_series(grid, [&](std::size_t n) { return std::pow(lambda_value(spec, n, p), p); });
  g.frame_sum = detail::accumulate_series(grid, [&](std::size_t n) {
    const double l = lambda_value(spec, n, p);
    const double d = std::pow(l, epsilon / (p - 2.0));
    return double(copies_count(d)) * std::pow(d, p) * std::pow(l, p);
  });
  g.lambda_p_eps =
      detail::accumulate_series(grid, [&](std::size_t n) { return std::pow(lambda_value(spec, n, p), p + epsilon); });
  return g;
}

// S = T A, so that S e_k = T f_k on the coefficient space.
inline ComplexMatrix coefficient_operator(const CopiesFrame& pf, const ComplexMatrix& t) {
  if (!t.is_square() || t.rows() != pf.frame.dim())
    throw dimension_error("coefficient_operator: operator " + t.shape() + " vs frame dim " +
                          std::to_string(pf.frame.dim()));
  std::vector<double> want = pf.lambda;
  std::sort(want.rbegin(), want.rend());
  const std::vector<double> sv = singular_values(t);
  for (std::size_t k = 0; k < sv.size(); ++k)
    if (std::abs(sv[k] - want[k]) > 1e-10 * std::max(1.0, want[0]))
      throw domain_error("coefficient_operator: singular values of T differ from the frame's lambda sequence");
  return t * pf.frame.vectors();
}

// ---------------------------------------------------------------------------
// Standard ONB plus the copies h/(√n log(n+1)) of a unit vector with ⟨Th,h⟩ ≠ 0.

struct AugmentedBasis {
  Frame frame;
  ComplexVector h;
  complex th{};                 // ⟨T h, h⟩
  double tail_sum = 0.0;        // Σ_{n<=copies} 1/(n log²(n+1))
  double expected_lower = 0.0;
  double expected_upper = 0.0;
};

namespace detail {

inline constexpr double diagonal_zero_tol = 1e-12;

inline ComplexVector nonzero_diagonal_vector(const ComplexMatrix& t) {
  const double tn = operator_norm(t);
  if (tn == 0.0) throw domain_error("augmented_basis: T = 0 has no vector with ⟨Th,h⟩ ≠ 0");
  const std::size_t d = t.rows();
  ComplexVector h = svd(t).left_vectors.column(0);
  if (std::abs(inner(t * h, h)) > diagonal_zero_tol * tn) return h;

  ComplexVector best;
  double best_val = 0.0;
  auto consider = [&](ComplexVector x) {
    const double v = std::abs(inner(t * x, x));
    if (v > best_val) {
      best_val = v;
      best = std::move(x);
    }
  };
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < d; ++i) {
    consider(unit_vector(d, i));
    for (std::size_t j = i + 1; j < d; ++j)
      for (const complex s : {complex{1, 0}, complex{-1, 0}, complex{0, 1}, complex{0, -1}}) {
        ComplexVector x(d);
        x[i] = r;
        x[j] = s * r;
        consider(std::move(x));
      }
  }
  if (best_val <= diagonal_zero_tol * tn)
    throw domain_error("augmented_basis: no vector with ⟨Th,h⟩ ≠ 0 found");
  return best;
}

}  // namespace detail

inline AugmentedBasis augmented_basis(const ComplexMatrix& t, std::size_t d, std::size_t copies) {
  if (!t.is_square() || t.rows() != d)
    throw dimension_error("augmented_basis: operator " + t.shape() + " vs d = " + std::to_string(d));
  if (copies == 0) throw domain_error("augmented_basis: copies must be >= 1");
  ComplexVector h = detail::nonzero_diagonal_vector(t);
  const complex th = inner(t * h, h);
  std::vector<ComplexVector> extra;
  double tail = 0.0;
  for (std::size_t n = 1; n <= copies; ++n) {
    extra.push_back(scaled(h, detail::log_weight(n)));
    tail += detail::log_weight(n) * detail::log_weight(n);
  }
  Frame f = union_frame(standard_basis(d), extra);
  return {std::move(f), std::move(h), th, tail, d >= 2 ? 1.0 : 1.0 + tail, 1.0 + tail};
}

// Σ_{n<=N} |⟨T f'_n, f'_n⟩|^p = |⟨Th,h⟩|^p Σ_{n<=N} (n log²(n+1))^{−p} over the copies.
inline GrowthSeries augmented_diag_growth(complex th, double p, std::span<const std::size_t> grid = default_growth_grid) {
  if (!(p > 0.0)) throw domain_error("augmented_diag_growth: p must be > 0");
  detail::require_grid(grid, "augmented_diag_growth");
  const double a = std::pow(std::abs(th), p);
  return detail::accumulate_series(grid, [&](std::size_t n) {
    const double w = detail::log_weight(n);
    return a * std::pow(w * w, p);
  });
}

// T e_n = e_{n+1}, T e_d = 0.
inline ComplexMatrix shift_example(std::size_t d) {
  if (d < 2) throw domain_error("shift_example: d must be >= 2");
  ComplexMatrix t(d, d);
  for (std::size_t n = 0; n + 1 < d; ++n) t(n + 1, n) = 1.0;
  return t;
}

// ---------------------------------------------------------------------------
// T x = Σ 2^{−n} ⟨x, h_n⟩ e_n with {h_n} the columns of the reflector U mapping
// e_1 to the normalized log-weight vector h_1.

struct ReflectorExample {
  ComplexMatrix t;
  ComplexMatrix u;
  ComplexVector h1;
  GrowthSeries double_sums;  // Σ_n Σ_k |⟨T e_n, e_k⟩|^p at each truncation
  GrowthSeries norm_sums;    // Σ_n 2^{−np} = ‖T‖_p^p at each truncation
  double tail_bound = 0.0;   // bound on the omitted columns of the double sum
};

inline ComplexMatrix householder_to(std::span<const complex> target) {
  const std::size_t d = target.size();
  ComplexVector v(target.begin(), target.end());
  for (auto& z : v) z = -z;
  v[0] += 1.0;
  const double vv = norm_sq(v);
  ComplexMatrix u = ComplexMatrix::identity(d);
  if (vv == 0.0) return u;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u(i, j) -= 2.0 * v[i] * std::conj(v[j]) / vv;
  return u;
}

namespace detail {

// Σ_n 2^{−np} Σ_k |U_{kn}|^p for the reflector built from h_1 of length D, in
// O(D) using the explicit columns U e_n = e_n + c_n (e_1 − h_1), c_n = h_1[n]/(1 − h_1[1]).
// Columns beyond the underflow cut are bounded by 2^{−np} D^{1−p/2}.
inline double reflector_double_sum(const std::vector<double>& w, std::size_t D, double p, double& tail) {
  double nsq = 0.0;
  for (std::size_t k = 0; k < D; ++k) nsq += w[k] * w[k];
  const double scale = 1.0 / std::sqrt(nsq);
  auto h = [&](std::size_t k) { return w[k] * scale; };
  double rest = 0.0;  // Σ_{k>=2} h_k^p
  for (std::size_t k = 1; k < D; ++k) rest += std::pow(h(k), p);
  const double h0 = h(0);

  double s = std::pow(2.0, -p) * (std::pow(h0, p) + rest);
  const double col_bound = std::pow(double(D), 1.0 - p / 2.0);
  std::size_t n = 2;
  for (; n <= D; ++n) {
    const double g = std::pow(2.0, -double(n) * p);
    if (g * col_bound < 1e-18 * s) break;
    const double hn = h(n - 1);
    const double c = hn / (1.0 - h0);
    const double col = std::pow(hn, p) + std::pow(c, p) * (rest - std::pow(hn, p)) + std::pow(std::abs(1.0 - c * hn), p);
    s += g * col;
  }
  tail = n <= D ? col_bound * std::pow(2.0, -double(n) * p) / (1.0 - std::pow(2.0, -p)) : 0.0;
  return s;
}

}  // namespace detail

inline ReflectorExample reflector_example(std::size_t d, double p, std::span<const std::size_t> grid = default_growth_grid) {
  if (d < 2) throw domain_error("reflector_example: d must be >= 2");
  if (!(p > 0.0) || p >= 2.0) throw domain_error("reflector_example: p must lie in (0, 2), got " + std::to_string(p));
  detail::require_grid(grid, "reflector_example");
  ReflectorExample ex{ComplexMatrix(d, d), ComplexMatrix(d, d), {}, {}, {}, 0.0};
  ex.h1 = log_weight_vector(d);
  const double hn = norm(ex.h1);
  for (auto& z : ex.h1) z /= hn;
  ex.u = householder_to(ex.h1);
  // T = diag(2^{−n}) U*
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t k = 0; k < d; ++k) ex.t(n, k) = std::ldexp(1.0, -int(n + 1)) * std::conj(ex.u(k, n));

  std::vector<double> w(grid.back());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = detail::log_weight(k + 1);
  ex.double_sums.truncations.assign(grid.begin(), grid.end());
  for (std::size_t cut : grid) {
    double tail = 0.0;
    ex.double_sums.partial_sums.push_back(detail::reflector_double_sum(w, cut, p, tail));
    ex.tail_bound = std::max(ex.tail_bound, tail);
  }
  ex.double_sums.verdict = classify_growth(ex.double_sums.partial_sums);
  ex.norm_sums = detail::accumulate_series(grid, [p](std::size_t n) { return std::pow(2.0, -double(n) * p); });
  return ex;
}

// ---------------------------------------------------------------------------

struct Conjugations {
  ComplexMatrix a_star_t_a;           // A* T A, an operator on the coefficient space
  ComplexMatrix square;               // T* T
  std::optional<ComplexMatrix> sqrt;  // √T, only for PSD T
};

// A is the synthesis matrix of the frame (d x N).
inline Conjugations conjugations(const ComplexMatrix& t, const Frame& f) {
  if (!t.is_square() || t.rows() != f.dim())
    throw dimension_error("conjugations: operator " + t.shape() + " vs frame dim " + std::to_string(f.dim()));
  const ComplexMatrix& a = f.vectors();
  Conjugations c{a.adjoint() * (t * a), t.adjoint() * t, std::nullopt};
  if (is_psd(t)) c.sqrt = psd_sqrt(t);
  return c;
}

// A S A* for an operator S on the coefficient space (N x N).
inline ComplexMatrix synthesis_conjugate(const ComplexMatrix& s, const Frame& f) {
  if (!s.is_square() || s.rows() != f.size())
    throw dimension_error("synthesis_conjugate: operator " + s.shape() + " vs frame size " +
                          std::to_string(f.size()));
  const ComplexMatrix& a = f.vectors();
  return a * (s * a.adjoint());
}

inline ComplexMatrix operator_sqrt(const ComplexMatrix& t) {
  if (!is_psd(t)) throw not_psd_error("operator_sqrt: operator is not positive semidefinite", 0.0);
  return psd_sqrt(t);
}

struct TransferDefects {
  double conjugation = 0.0;  // max |⟨(A*TA) e_n, e_n⟩ − ⟨T f_n, f_n⟩|
  double sqrt = 0.0;         // max |‖√T e_n‖² − ⟨T e_n, e_n⟩| (PSD T only)
  double square = 0.0;       // max |‖T f_n‖^{2p} − ⟨T*T f_n, f_n⟩^p|, relative
};

inline TransferDefects transfer_defects(const ComplexMatrix& t, const Frame& f, double p = 1.0) {
  const Conjugations c = conjugations(t, f);
  TransferDefects d;
  const ComplexVector direct = detail::diagonal_values(t, f);
  for (std::size_t n = 0; n < f.size(); ++n)
    d.conjugation = std::max(d.conjugation, std::abs(c.a_star_t_a(n, n) - direct[n]));
  if (c.sqrt)
    for (std::size_t n = 0; n < f.dim(); ++n) {
      const ComplexVector col = c.sqrt->column(n);
      d.sqrt = std::max(d.sqrt, std::abs(norm_sq(col) - t(n, n).real()));
    }
  const ComplexMatrix tf = t * f.vectors();
  const ComplexVector sq = detail::diagonal_values(c.square, f);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double lhs = std::pow(norm_sq(tf.column(n)), p);
    const double rhs = std::pow(std::max(sq[n].real(), 0.0), p);
    d.square = std::max(d.square, std::abs(lhs - rhs) / std::max({lhs, rhs, 1e-300}));
  }
  return d;
}

}  // namespace framelab
