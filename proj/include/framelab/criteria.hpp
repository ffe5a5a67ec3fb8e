#pragma once
//
// Frame-sum functionals and the sup/inf norm certificates.
//
// The sup and inf over all frames are not computable; a certificate instead
// (a) evaluates the analytically extremal basis (right singular vectors, or
// eigenvectors for Hermitian input), which attains ‖T‖_p^p exactly in finite
// dimension, and (b) checks the one-sided inequality on a seeded ensemble of
// orthonormal bases and normalized random frames.
//
// Frame normalizations by regime:
//   sup_below (p >= 2 for norms/double sums, p >= 1 for diagonal sums):
//       frames rescaled to upper bound C2 = 1;
//   inf_above (p <= 2, p <= 1 for diagonal sums):
//       canonical Parseval frames, and frames rescaled to lower bound C1 = 1
//       for the weighted sums.
//
// double_sum_bounds: the p >= 2 bound uses the upper frame bound, the p <= 2 bound the lower one.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "framelab/error.hpp"
#include "framelab/frames.hpp"
#include "framelab/matrix.hpp"
#include "framelab/random.hpp"
#include "framelab/spectral.hpp"

namespace framelab {

enum class SumKind { norms, diag, double_sum, weighted_norms, weighted_diag, weighted_double };

inline std::string_view to_string(SumKind k) {
  switch (k) {
    case SumKind::norms: return "norms";
    case SumKind::diag: return "diag";
    case SumKind::double_sum: return "double";
    case SumKind::weighted_norms: return "weighted_norms";
    case SumKind::weighted_diag: return "weighted_diag";
    case SumKind::weighted_double: return "weighted_double";
  }
  return "?";
}

struct SumReport {
  SumKind kind;
  double p;
  double value;
  std::string frame_id;
  std::string operator_id;
};

enum class Direction { sup_below, inf_above };

inline std::string_view to_string(Direction d) {
  return d == Direction::sup_below ? "sup_below" : "inf_above";
}

struct CertificateReport {
  std::string tag;
  double p = 0.0;
  std::size_t trials = 0;
  std::size_t samples = 0;
  double extremal_value = 0.0;  // max (sup_below) or min (inf_above) over samples
  double norm_value = 0.0;      // ‖T‖_p^p
  Direction direction = Direction::sup_below;
  bool equality_witness = false;  // extremal basis reproduces ‖T‖_p^p
  double witness_value = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  std::size_t violations = 0;
  bool passed = true;
};

inline constexpr double hermitian_real_tol = 1e-10;

namespace detail {

inline void require_compatible(const ComplexMatrix& t, const Frame& f, const char* who) {
  if (!t.is_square() || t.rows() != f.dim())
    throw dimension_error(std::string(who) + ": operator " + t.shape() + " vs frame dim " +
                          std::to_string(f.dim()));
}

inline void require_p(double p, const char* who) {
  if (!(p > 0.0)) throw domain_error(std::string(who) + ": p must be > 0");
}

inline double pow_nonneg(double x, double p) { return x > 0.0 ? std::pow(x, p) : 0.0; }

inline bool looks_hermitian(const ComplexMatrix& t) {
  return hermitian_defect(t) <= hermitian_input_tol * std::max(1.0, max_abs(t));
}

// ⟨T f_n, f_n⟩ for every n.
inline ComplexVector diagonal_values(const ComplexMatrix& t, const Frame& f) {
  const ComplexMatrix tf = t * f.vectors();
  ComplexVector out(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    complex s{};
    for (std::size_t i = 0; i < f.dim(); ++i) s += tf(i, n) * std::conj(f.vectors()(i, n));
    out[n] = s;
  }
  return out;
}

// Real part of a Hermitian form value after checking the imaginary residue.
inline double hermitian_value(complex v) {
  if (std::abs(v.imag()) > hermitian_real_tol * (1.0 + std::abs(v)))
    throw not_hermitian_error("⟨Tf,f⟩ has imaginary part " + std::to_string(v.imag()), std::abs(v.imag()));
  return v.real();
}

inline std::vector<double> column_norms(const ComplexMatrix& m) {
  std::vector<double> out(m.cols());
  for (std::size_t n = 0; n < m.cols(); ++n) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, n));
    out[n] = std::sqrt(s);
  }
  return out;
}

// Row sums Σ_k |⟨T f_n, f_k⟩|^p, n = 1..N.
inline std::vector<double> double_rows(const ComplexMatrix& t, const Frame& f, double p) {
  const ComplexMatrix gram = f.vectors().adjoint() * (t * f.vectors());  // (k, n) = ⟨T f_n, f_k⟩
  std::vector<double> rows(f.size(), 0.0);
  for (std::size_t k = 0; k < gram.rows(); ++k)
    for (std::size_t n = 0; n < gram.cols(); ++n) rows[n] += pow_nonneg(std::abs(gram(k, n)), p);
  return rows;
}

// Power sum over a witness basis. On an exact singular or eigen basis the
// entries that vanish in exact arithmetic come out at rounding level, and
// raising them to a small p would dominate. Magnitudes below the resolution
// of the Gram-based spectrum, √(d·eps)·max, are flushed like singular values.
inline double witness_sum(const std::vector<double>& mags, double p, std::size_t d) {
  const double top = mags.empty() ? 0.0 : *std::max_element(mags.begin(), mags.end());
  const double floor = std::sqrt(double(d) * std::numeric_limits<double>::epsilon()) * top;
  double s = 0.0;
  for (double m : mags)
    if (m > floor) s += std::pow(m, p);
  return s;
}

inline std::vector<double> gram_magnitudes(const ComplexMatrix& t, const ComplexMatrix& basis) {
  const ComplexMatrix gram = basis.adjoint() * (t * basis);
  std::vector<double> m;
  m.reserve(gram.rows() * gram.cols());
  for (const complex z : gram.entries()) m.push_back(std::abs(z));
  return m;
}

inline std::vector<double> gram_diagonal_magnitudes(const ComplexMatrix& t, const ComplexMatrix& basis) {
  const ComplexMatrix gram = basis.adjoint() * (t * basis);
  std::vector<double> m(gram.rows());
  for (std::size_t n = 0; n < gram.rows(); ++n) m[n] = std::abs(hermitian_value(gram(n, n)));
  return m;
}

}  // namespace detail

// Σ_n ‖T f_n‖^p
inline SumReport sum_norms(const ComplexMatrix& t, const Frame& f, double p, std::string operator_id = {}) {
  detail::require_compatible(t, f, "sum_norms");
  detail::require_p(p, "sum_norms");
  double s = 0.0;
  for (double v : detail::column_norms(t * f.vectors())) s += detail::pow_nonneg(v, p);
  return {SumKind::norms, p, s, f.label(), std::move(operator_id)};
}

// Σ_n |⟨T f_n, f_n⟩|^p; with require_psd the operator must be Hermitian PSD.
inline SumReport sum_diag(const ComplexMatrix& t, const Frame& f, double p, bool require_psd = false,
                          std::string operator_id = {}) {
  detail::require_compatible(t, f, "sum_diag");
  detail::require_p(p, "sum_diag");
  if (require_psd && !is_psd(t))
    throw not_psd_error("sum_diag: operator is not positive semidefinite", 0.0);
  const bool herm = detail::looks_hermitian(t);
  double s = 0.0;
  for (const complex v : detail::diagonal_values(t, f))
    s += detail::pow_nonneg(herm ? std::abs(detail::hermitian_value(v)) : std::abs(v), p);
  return {SumKind::diag, p, s, f.label(), std::move(operator_id)};
}

// Σ_n Σ_k |⟨T f_n, f_k⟩|^p
inline SumReport sum_double(const ComplexMatrix& t, const Frame& f, double p, std::string operator_id = {}) {
  detail::require_compatible(t, f, "sum_double");
  detail::require_p(p, "sum_double");
  double s = 0.0;
  for (double r : detail::double_rows(t, f, p)) s += r;
  return {SumKind::double_sum, p, s, f.label(), std::move(operator_id)};
}

// Weighted variants; zero frame vectors contribute 0.
//   weighted_norms : Σ ‖f_n‖^{2−p} ‖T f_n‖^p,              0 < p <= 2
//   weighted_diag  : Σ ‖f_n‖^{2(1−p)} ⟨T f_n, f_n⟩^p, T >= 0, 0 < p <= 1
//   weighted_double: Σ_n ‖f_n‖^{2−p} Σ_k |⟨T f_n, f_k⟩|^p,  0 < p <= 2
// The unweighted kinds dispatch to the plain sums.
inline SumReport weighted_sum(SumKind kind, const ComplexMatrix& t, const Frame& f, double p,
                              std::string operator_id = {}) {
  switch (kind) {
    case SumKind::norms: return sum_norms(t, f, p, std::move(operator_id));
    case SumKind::diag: return sum_diag(t, f, p, false, std::move(operator_id));
    case SumKind::double_sum: return sum_double(t, f, p, std::move(operator_id));
    default: break;
  }
  detail::require_compatible(t, f, "weighted_sum");
  detail::require_p(p, "weighted_sum");
  const double pmax = kind == SumKind::weighted_diag ? 1.0 : 2.0;
  if (p > pmax)
    throw domain_error("weighted_sum(" + std::string(to_string(kind)) + "): p must lie in (0, " +
                       (kind == SumKind::weighted_diag ? std::string("1]") : std::string("2]")) +
                       ", got " + std::to_string(p));

  const std::vector<double> fn = detail::column_norms(f.vectors());
  double s = 0.0;
  if (kind == SumKind::weighted_norms) {
    const std::vector<double> tf = detail::column_norms(t * f.vectors());
    for (std::size_t n = 0; n < f.size(); ++n)
      if (fn[n] > 0.0) s += std::pow(fn[n], 2.0 - p) * detail::pow_nonneg(tf[n], p);
  } else if (kind == SumKind::weighted_diag) {
    if (!is_psd(t)) throw not_psd_error("weighted_sum(weighted_diag): operator is not PSD", 0.0);
    const ComplexVector dv = detail::diagonal_values(t, f);
    for (std::size_t n = 0; n < f.size(); ++n)
      if (fn[n] > 0.0)
        s += std::pow(fn[n], 2.0 * (1.0 - p)) *
             detail::pow_nonneg(std::max(detail::hermitian_value(dv[n]), 0.0), p);
  } else {
    const std::vector<double> rows = detail::double_rows(t, f, p);
    for (std::size_t n = 0; n < f.size(); ++n)
      if (fn[n] > 0.0) s += std::pow(fn[n], 2.0 - p) * rows[n];
  }
  return {kind, p, s, f.label(), std::move(operator_id)};
}

struct DoubleSumBounds {
  double p = 0.0;
  double double_sum = 0.0;  // Σ Σ |⟨T f_n, f_k⟩|^p
  double norm_sum = 0.0;    // Σ ‖T f_n‖^p
  double upper_constant = 0.0;  // C2^{p/2}, used when p >= 2
  double lower_constant = 0.0;  // C1^{p/2}, used when p <= 2
  bool upper_checked = false;
  bool lower_checked = false;
  bool passed = true;
};

inline DoubleSumBounds double_sum_bounds(const ComplexMatrix& t, const Frame& f, double p,
                                        double tol = 1e-9) {
  DoubleSumBounds c;
  c.p = p;
  c.double_sum = sum_double(t, f, p).value;
  c.norm_sum = sum_norms(t, f, p).value;
  c.upper_constant = std::pow(f.upper_bound(), p / 2.0);
  c.lower_constant = std::pow(f.lower_bound(), p / 2.0);
  if (p >= 2.0) {
    c.upper_checked = true;
    const double rhs = c.upper_constant * c.norm_sum;
    if (c.double_sum > rhs + tol * std::max(rhs, c.double_sum)) c.passed = false;
  }
  if (p <= 2.0) {
    c.lower_checked = true;
    const double rhs = c.lower_constant * c.norm_sum;
    if (c.double_sum < rhs - tol * std::max(rhs, c.double_sum)) c.passed = false;
  }
  return c;
}

struct CertificateOptions {
  double tol = 1e-9;
  double condition_target = 1e3;  // for the random frames before normalization
};

namespace detail {

inline constexpr std::uint64_t onb_stream = 11;
inline constexpr std::uint64_t frame_stream = 12;

// Frame size varies with the trial so square (count = d) and redundant
// families are both sampled.
inline Frame trial_frame(std::size_t d, std::uint64_t trial_seed, double cond) {
  const std::size_t count = d + static_cast<std::size_t>(trial_seed % (2 * d + 1));
  return random_frame(d, count, cond, derive_seed(trial_seed, frame_stream));
}

inline Frame trial_onb(std::size_t d, std::uint64_t trial_seed) {
  return random_onb(d, derive_seed(trial_seed, onb_stream));
}

class DirectionTracker {
 public:
  DirectionTracker(CertificateReport& r) : r_(r) {
    r_.extremal_value = r_.direction == Direction::sup_below ? -HUGE_VAL : HUGE_VAL;
  }
  void add(double value) {
    ++r_.samples;
    const double slack = r_.tolerance * std::max({r_.norm_value, value, 1e-300});
    if (r_.direction == Direction::sup_below) {
      r_.extremal_value = std::max(r_.extremal_value, value);
      if (value > r_.norm_value + slack) ++r_.violations;
    } else {
      r_.extremal_value = std::min(r_.extremal_value, value);
      if (value < r_.norm_value - slack) ++r_.violations;
    }
  }
  void witness(double value) {
    r_.witness_value = value;
    r_.equality_witness =
        std::abs(value - r_.norm_value) <= r_.tolerance * std::max({r_.norm_value, value, 1e-300});
  }
  void finish(bool require_witness) {
    r_.passed = r_.violations == 0 && (!require_witness || r_.equality_witness);
  }

 private:
  CertificateReport& r_;
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t i) { return seed + i; }

}  // namespace detail

// ‖T‖_p^p = sup Σ‖T f_n‖^p over C2 <= 1 (p >= 2), = inf over Parseval frames (p < 2).
inline CertificateReport certify_norm_formula(const ComplexMatrix& t, double p, std::size_t trials,
                                              std::uint64_t seed, const CertificateOptions& opt = {}) {
  if (!t.is_square()) throw dimension_error("certify_norm_formula: non-square operator");
  detail::require_p(p, "certify_norm_formula");
  if (trials == 0) throw domain_error("certify_norm_formula: trials must be >= 1");
  CertificateReport r;
  r.p = p;
  r.trials = trials;
  r.tolerance = opt.tol;
  r.direction = p >= 2.0 ? Direction::sup_below : Direction::inf_above;
  r.tag = p >= 2.0 ? "norm-sup" : "norm-inf";
  r.norm_value = schatten_power_sum(t, p);
  detail::DirectionTracker track(r);

  const std::size_t d = t.rows();
  track.witness(detail::witness_sum(detail::column_norms(t * svd(t).right_vectors), p, t.rows()));
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = detail::trial_seed(seed, i);
    track.add(sum_norms(t, detail::trial_onb(d, s), p).value);
    const Frame raw = detail::trial_frame(d, s, opt.condition_target);
    if (r.direction == Direction::sup_below) {
      track.add(sum_norms(t, rescale_upper_bound_one(raw), p).value);
    } else {
      track.add(sum_norms(t, canonical_parseval(raw), p).value);
      track.add(weighted_sum(SumKind::weighted_norms, t, rescale_lower_bound_one(raw), p).value);
    }
  }
  track.finish(true);
  return r;
}

// Hermitian T: ‖T‖_p^p = sup Σ|⟨T f_n, f_n⟩|^p over C2 <= 1 (p >= 1);
// PSD T, 0 < p <= 1: = inf of the weighted sum over C1 >= 1 and of the plain
// sum over Parseval frames.
inline CertificateReport certify_diag_formula(const ComplexMatrix& t, double p, std::size_t trials,
                                              std::uint64_t seed, const CertificateOptions& opt = {}) {
  detail::require_p(p, "certify_diag_formula");
  if (!t.is_square()) throw dimension_error("certify_diag_formula: non-square operator");
  if (!detail::looks_hermitian(t))
    throw not_hermitian_error("certify_diag_formula: the diagonal norm formula needs a self-adjoint operator",
                              hermitian_defect(t));
  if (trials == 0) throw domain_error("certify_diag_formula: trials must be >= 1");
  const bool psd = is_psd(t);
  CertificateReport r;
  r.p = p;
  r.trials = trials;
  r.tolerance = opt.tol;
  if (psd && p <= 1.0) {
    r.direction = Direction::inf_above;
    r.tag = "diag-inf";
  } else if (p >= 1.0) {
    r.direction = Direction::sup_below;
    r.tag = "diag-sup";
  } else {
    throw domain_error("certify_diag_formula: p < 1 requires a positive operator");
  }
  r.norm_value = schatten_power_sum(t, p);
  detail::DirectionTracker track(r);

  const std::size_t d = t.rows();
  track.witness(detail::witness_sum(detail::gram_diagonal_magnitudes(t, hermitian_eigen(t).eigenvectors), p, t.rows()));
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = detail::trial_seed(seed, i);
    track.add(sum_diag(t, detail::trial_onb(d, s), p).value);
    const Frame raw = detail::trial_frame(d, s, opt.condition_target);
    if (r.direction == Direction::sup_below) {
      track.add(sum_diag(t, rescale_upper_bound_one(raw), p).value);
    } else {
      track.add(weighted_sum(SumKind::weighted_diag, t, rescale_lower_bound_one(raw), p).value);
      track.add(sum_diag(t, canonical_parseval(raw), p).value);
    }
  }
  track.finish(true);
  return r;
}

// p >= 2, any T: sup of the double sum over C2 <= 1 is at most ‖T‖_p^p.
// 0 < p < 2, Hermitian T: inf over Parseval frames (and of the weighted double
// sum over C1 >= 1) is ‖T‖_p^p. Hermitian input has the eigenbasis as witness;
// for non-Hermitian input the witness is only reported.
inline CertificateReport certify_double_formula(const ComplexMatrix& t, double p, std::size_t trials,
                                                std::uint64_t seed, const CertificateOptions& opt = {}) {
  detail::require_p(p, "certify_double_formula");
  if (!t.is_square()) throw dimension_error("certify_double_formula: non-square operator");
  if (trials == 0) throw domain_error("certify_double_formula: trials must be >= 1");
  const bool herm = detail::looks_hermitian(t);
  CertificateReport r;
  r.p = p;
  r.trials = trials;
  r.tolerance = opt.tol;
  if (p >= 2.0) {
    r.direction = Direction::sup_below;
    r.tag = "double-sup";
  } else {
    if (!herm)
      throw not_hermitian_error("certify_double_formula: p < 2 requires a self-adjoint operator",
                                hermitian_defect(t));
    r.direction = Direction::inf_above;
    r.tag = "double-inf";
  }
  r.norm_value = schatten_power_sum(t, p);
  detail::DirectionTracker track(r);

  const std::size_t d = t.rows();
  const ComplexMatrix basis = herm ? hermitian_eigen(t).eigenvectors : svd(t).right_vectors;
  track.witness(detail::witness_sum(detail::gram_magnitudes(t, basis), p, d));
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = detail::trial_seed(seed, i);
    track.add(sum_double(t, detail::trial_onb(d, s), p).value);
    const Frame raw = detail::trial_frame(d, s, opt.condition_target);
    if (r.direction == Direction::sup_below) {
      track.add(sum_double(t, rescale_upper_bound_one(raw), p).value);
    } else {
      track.add(sum_double(t, canonical_parseval(raw), p).value);
      track.add(weighted_sum(SumKind::weighted_double, t, rescale_lower_bound_one(raw), p).value);
    }
  }
  track.finish(herm);
  return r;
}

struct EndpointReport {
  std::size_t trials = 0;
  bool trace_suite_run = false;      // only for PSD T
  double trace_norm = 0.0;           // ‖T‖_1
  double trace_worst_violation = 0.0;  // relative excess outside [C1, C2]·‖T‖_1
  double hs_norm_sq = 0.0;           // ‖T‖_2^2
  double hs_identity_defect = 0.0;   // max rel |Σ‖Tf_n‖² − tr(T*T S)|
  double hs_parseval_defect = 0.0;   // max rel |Σ‖Tf_n‖² − ‖T‖_2^2| for Parseval frames
  double hs_worst_violation = 0.0;   // relative excess outside [C1, C2]·‖T‖_2^2
  bool passed = true;
};

// p = 1 and p = 2 endpoint checks over arbitrary sampled frames.
inline EndpointReport endpoint_suites(const ComplexMatrix& t, std::size_t trials, std::uint64_t seed,
                                      double tol = 1e-10, double condition_target = 1e3) {
  if (!t.is_square()) throw dimension_error("endpoint_suites: non-square operator");
  EndpointReport r;
  r.trials = trials;
  r.trace_suite_run = is_psd(t);
  const std::size_t d = t.rows();
  const ComplexMatrix tt = t.adjoint() * t;
  r.hs_norm_sq = schatten_power_sum(t, 2.0);
  if (r.trace_suite_run) r.trace_norm = schatten_power_sum(t, 1.0);

  auto outside = [](double v, double lo, double hi) {
    const double scale = std::max({std::abs(hi), std::abs(v), 1e-300});
    return std::max({0.0, (lo - v) / scale, (v - hi) / scale});
  };
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = detail::trial_seed(seed, i);
    const Frame f = detail::trial_frame(d, s, condition_target);
    const double c1 = f.lower_bound(), c2 = f.upper_bound();
    if (r.trace_suite_run) {
      double diag = 0.0;
      for (const complex v : detail::diagonal_values(t, f)) diag += detail::hermitian_value(v);
      r.trace_worst_violation = std::max(r.trace_worst_violation, outside(diag, c1 * r.trace_norm, c2 * r.trace_norm));
    }
    const double sn = sum_norms(t, f, 2.0).value;
    const double via_trace = trace(tt * f.frame_operator()).real();
    r.hs_identity_defect =
        std::max(r.hs_identity_defect, std::abs(sn - via_trace) / std::max({sn, via_trace, 1e-300}));
    r.hs_worst_violation = std::max(r.hs_worst_violation, outside(sn, c1 * r.hs_norm_sq, c2 * r.hs_norm_sq));
    const double sp = sum_norms(t, canonical_parseval(f), 2.0).value;
    r.hs_parseval_defect =
        std::max(r.hs_parseval_defect, std::abs(sp - r.hs_norm_sq) / std::max({sp, r.hs_norm_sq, 1e-300}));
  }
  r.passed = r.trace_worst_violation <= tol && r.hs_identity_defect <= tol &&
             r.hs_parseval_defect <= tol && r.hs_worst_violation <= tol;
  return r;
}

// |⟨Tf,f⟩|² − (⟨T1 f,f⟩² + ⟨T2 f,f⟩²) for T = T1 + i T2.
inline double decomposition_identity_defect(const ComplexMatrix& t, std::span<const complex> f) {
  const SelfAdjointParts sa = self_adjoint_parts(t);
  const double a = inner(sa.t1 * f, f).real();
  const double b = inner(sa.t2 * f, f).real();
  return std::norm(inner(t * f, f)) - (a * a + b * b);
}

// ⟨T e, e⟩^p − ⟨T^p e, e⟩ for PSD T, unit e, 0 < p <= 1 (nonnegative).
inline double jensen_gap(const ComplexMatrix& t, std::span<const complex> e, double p) {
  const double lhs = std::pow(std::max(inner(t * e, e).real(), 0.0), p);
  const double rhs = inner(psd_power(t, p) * e, e).real();
  return lhs - rhs;
}

}  // namespace framelab
