#pragma once
//
// Finite frames.
//
// A Frame is an ordered family f_1..f_N in C^d (repetitions allowed) whose
// frame operator S = Σ f_n f_n* is invertible. In finite dimension the optimal
// frame bounds are the extreme eigenvalues of S, so no optimization is needed.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "framelab/eigen.hpp"
#include "framelab/error.hpp"
#include "framelab/matrix.hpp"
#include "framelab/random.hpp"
#include "framelab/spectral.hpp"

namespace framelab {

// Frame acceptance: λ_min(S) > spanning_tol · λ_max(S).
inline constexpr double default_spanning_tol = 1e-10;

class Frame;
Frame make_frame(ComplexMatrix columns, double tol = default_spanning_tol, std::string label = {});

class Frame {
 public:
  std::size_t dim() const noexcept { return vectors_.rows(); }
  std::size_t size() const noexcept { return vectors_.cols(); }

  // d x N matrix whose n-th column is f_n.
  const ComplexMatrix& vectors() const noexcept { return vectors_; }
  ComplexVector vector(std::size_t n) const { return vectors_.column(n); }

  const ComplexMatrix& frame_operator() const noexcept { return frame_operator_; }
  double lower_bound() const noexcept { return lower_; }
  double upper_bound() const noexcept { return upper_; }
  double condition() const noexcept { return upper_ / lower_; }

  bool is_parseval(double tol = 1e-9) const {
    return std::abs(lower_ - 1.0) <= tol && std::abs(upper_ - 1.0) <= tol;
  }

  const std::string& label() const noexcept { return label_; }

 private:
  Frame(ComplexMatrix v, ComplexMatrix s, double lo, double hi, std::string label)
      : vectors_(std::move(v)),
        frame_operator_(std::move(s)),
        lower_(lo),
        upper_(hi),
        label_(std::move(label)) {}

  friend Frame make_frame(ComplexMatrix, double, std::string);

  ComplexMatrix vectors_;
  ComplexMatrix frame_operator_;
  double lower_;
  double upper_;
  std::string label_;
};

// S = Σ f_n f_n*, accumulated vector by vector.
inline ComplexMatrix gram_accumulation(const ComplexMatrix& columns) {
  const std::size_t d = columns.rows();
  ComplexMatrix s(d, d);
  for (std::size_t n = 0; n < columns.cols(); ++n)
    for (std::size_t i = 0; i < d; ++i) {
      const complex fi = columns(i, n);
      if (fi == complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) s(i, j) += fi * std::conj(columns(j, n));
    }
  return s;
}

inline Frame make_frame(ComplexMatrix columns, double tol, std::string label) {
  ComplexMatrix s = gram_accumulation(columns);
  const auto ev = hermitian_eigen(s).eigenvalues;
  const double hi = ev.front(), lo = ev.back();
  if (!(hi > 0.0) || !(lo > tol * hi))
    throw not_a_frame_error("make_frame: family does not span C^" + std::to_string(columns.rows()) +
                                " (lambda_min = " + std::to_string(lo) + ")",
                            lo);
  return Frame(std::move(columns), std::move(s), lo, hi, std::move(label));
}

inline Frame make_frame(std::span<const ComplexVector> vectors, std::size_t dim,
                        double tol = default_spanning_tol, std::string label = {}) {
  if (vectors.empty()) throw domain_error("make_frame: empty family");
  return make_frame(ComplexMatrix::from_columns(vectors, dim), tol, std::move(label));
}

// Synthesis operator A: e_k -> f_k.
struct SynthesisOperator {
  ComplexMatrix matrix;
};

inline SynthesisOperator synthesis(const Frame& f) { return {f.vectors()}; }

struct SynthesisCertificate {
  bool passed = true;
  double lower_bound = 0.0;        // C1 (cached)
  double upper_bound = 0.0;        // C2 (cached)
  double synthesis_norm_sq = 0.0;  // ‖A‖², power iteration on A*A
  double aa_min = 0.0;             // λ_min(AA*)
  double aa_max = 0.0;             // λ_max(AA*)
  std::size_t rank = 0;            // rank(A); N − rank is the dimension of ker A
  std::size_t frame_size = 0;
  double analysis_defect = 0.0;    // max relative |‖A*f‖² − Σ|⟨f,f_n⟩|²| over probes
  double probe_ratio_min = 0.0;    // min Σ|⟨f,f_n⟩|² / ‖f‖² over probes
  double probe_ratio_max = 0.0;
  std::string violation;
};

namespace detail {

// Largest eigenvalue of A*A by power iteration in coefficient space.
inline double synthesis_norm_sq(const ComplexMatrix& a, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix ah = a.adjoint();
  ComplexVector x = random_unit_vector(a.cols(), rng);
  double rq = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const ComplexVector y = a * x;
    ComplexVector z = ah * y;
    const double next = norm_sq(y);  // ⟨A*A x, x⟩ with ‖x‖ = 1
    const double nz = norm(z);
    if (nz == 0.0) return 0.0;
    for (auto& c : z) c /= nz;
    x = std::move(z);
    if (it > 2 && std::abs(next - rq) <= 1e-14 * next) {
      rq = next;
      break;
    }
    rq = next;
  }
  return rq;
}

}  // namespace detail

inline SynthesisCertificate certify_synthesis(const Frame& f, double tol = 1e-9, std::uint64_t seed = 0,
                                        std::size_t probes = 16) {
  SynthesisCertificate c;
  const ComplexMatrix& a = f.vectors();
  c.lower_bound = f.lower_bound();
  c.upper_bound = f.upper_bound();
  c.frame_size = f.size();

  const ComplexMatrix aa = a * a.adjoint();
  const auto ev = hermitian_eigen(aa).eigenvalues;
  c.aa_max = ev.front();
  c.aa_min = ev.back();
  c.synthesis_norm_sq = detail::synthesis_norm_sq(a, derive_seed(seed, 1));

  const auto sv = singular_values(a);
  c.rank = static_cast<std::size_t>(std::count_if(
      sv.begin(), sv.end(), [&](double s) { return s > rank_tol_factor * sv.front(); }));

  Rng rng(derive_seed(seed, 2));
  const ComplexMatrix ah = a.adjoint();
  c.probe_ratio_min = HUGE_VAL;
  c.probe_ratio_max = 0.0;
  for (std::size_t k = 0; k < probes; ++k) {
    const ComplexVector g = random_unit_vector(f.dim(), rng);
    double direct = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
      complex ip{};
      for (std::size_t i = 0; i < f.dim(); ++i) ip += g[i] * std::conj(a(i, n));
      direct += std::norm(ip);
    }
    const double via_adjoint = norm_sq(ah * g);
    c.analysis_defect =
        std::max(c.analysis_defect, std::abs(direct - via_adjoint) / std::max(direct, 1e-300));
    c.probe_ratio_min = std::min(c.probe_ratio_min, direct);
    c.probe_ratio_max = std::max(c.probe_ratio_max, direct);
  }

  const double scale = std::max(1.0, c.upper_bound);
  auto fail = [&](std::string why) {
    if (c.passed) c.violation = std::move(why);
    c.passed = false;
  };
  if (c.synthesis_norm_sq < c.lower_bound - tol * scale)
    fail("‖A‖² = " + std::to_string(c.synthesis_norm_sq) + " below lower bound");
  if (c.synthesis_norm_sq > c.upper_bound + tol * scale)
    fail("‖A‖² = " + std::to_string(c.synthesis_norm_sq) + " above upper bound");
  if (!(c.aa_min > 0.0)) fail("AA* not invertible");
  if (std::abs(c.aa_min - c.lower_bound) > tol * scale)
    fail("λ_min(AA*) = " + std::to_string(c.aa_min) + " differs from C1");
  if (std::abs(c.aa_max - c.upper_bound) > tol * scale)
    fail("λ_max(AA*) = " + std::to_string(c.aa_max) + " differs from C2");
  if (c.analysis_defect > tol) fail("analysis identity defect " + std::to_string(c.analysis_defect));
  if (c.probe_ratio_min < c.lower_bound - tol * scale || c.probe_ratio_max > c.upper_bound + tol * scale)
    fail("frame inequality violated on a probe");
  return c;
}

// {S^{-1/2} f_n}: the canonical Parseval frame.
inline Frame canonical_parseval(const Frame& f) {
  const auto e = hermitian_eigen(f.frame_operator());
  const ComplexMatrix s_inv_half = spectral_apply(e, [](double mu) { return 1.0 / std::sqrt(mu); });
  return make_frame(s_inv_half * f.vectors(), default_spanning_tol, f.label());
}

inline Frame rescale(const Frame& f, double factor) {
  return make_frame(f.vectors() * complex{factor}, default_spanning_tol, f.label());
}

// Divides every vector by √C2; bounds become (C1/C2, 1).
inline Frame rescale_upper_bound_one(const Frame& f) {
  return rescale(f, 1.0 / std::sqrt(f.upper_bound()));
}

// Divides every vector by √C1; bounds become (1, C2/C1).
inline Frame rescale_lower_bound_one(const Frame& f) {
  return rescale(f, 1.0 / std::sqrt(f.lower_bound()));
}

// Haar-like random unitary: Gram-Schmidt of a complex Gaussian matrix, each
// column rotated so its first nonzero entry is real positive.
inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
  detail::complete_unitary(g, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::size_t i = 0;
    while (i + 1 < dim && std::abs(g(i, j)) == 0.0) ++i;
    const double mag = std::abs(g(i, j));
    const complex ph = std::conj(g(i, j)) / mag;
    for (std::size_t k = 0; k < dim; ++k) g(k, j) *= ph;
    g(i, j) = mag;
  }
  return g;
}

inline Frame random_onb(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw domain_error("random_onb: dim must be >= 1");
  Rng rng(seed);
  return make_frame(random_unitary(dim, rng), default_spanning_tol, "onb:" + std::to_string(seed));
}

// Random frame with C2/C1 <= condition_target: a multiset of random ONBs
// blended with Gaussian perturbations whose amplitude halves on each retry.
// condition_target == 1 returns the canonical Parseval projection.
inline Frame random_frame(std::size_t dim, std::size_t count, double condition_target,
                          std::uint64_t seed) {
  if (dim == 0 || count < dim)
    throw domain_error("random_frame: need count >= dim >= 1 (dim " + std::to_string(dim) +
                       ", count " + std::to_string(count) + ")");
  if (!(condition_target >= 1.0)) throw domain_error("random_frame: condition_target must be >= 1");
  Rng rng(seed);
  const std::size_t n_bases = (count + dim - 1) / dim;
  std::vector<ComplexMatrix> bases;
  for (std::size_t b = 0; b < n_bases; ++b) bases.push_back(random_unitary(dim, rng));
  ComplexMatrix noise = random_gaussian_matrix(dim, count, rng) * complex{1.0 / std::sqrt(double(dim))};
  std::vector<double> weight(count);
  for (auto& w : weight) w = rng.uniform() - 0.5;

  const std::string label = "frame:" + std::to_string(seed);
  const bool parseval = condition_target <= 1.0 + 1e-12;
  double amp = 1.0;
  double achieved = HUGE_VAL;
  for (int attempt = 0; attempt < 50; ++attempt, amp *= 0.5) {
    ComplexMatrix v(dim, count);
    for (std::size_t k = 0; k < count; ++k) {
      const ComplexMatrix& u = bases[k / dim];
      const double w = 1.0 + amp * weight[k];
      for (std::size_t i = 0; i < dim; ++i) v(i, k) = w * u(i, k % dim) + amp * noise(i, k);
    }
    try {
      Frame f = make_frame(std::move(v), default_spanning_tol, label);
      if (parseval) return canonical_parseval(f);
      achieved = f.condition();
      if (achieved <= condition_target) return f;
    } catch (const not_a_frame_error&) {
    }
  }
  throw convergence_error("random_frame: condition target " + std::to_string(condition_target) +
                              " not reached after 50 retries (best " + std::to_string(achieved) + ")",
                          achieved);
}

inline Frame union_frame(const Frame& a, std::span<const ComplexVector> extra) {
  ComplexMatrix v(a.dim(), a.size() + extra.size());
  for (std::size_t n = 0; n < a.size(); ++n)
    for (std::size_t i = 0; i < a.dim(); ++i) v(i, n) = a.vectors()(i, n);
  for (std::size_t k = 0; k < extra.size(); ++k) {
    if (extra[k].size() != a.dim()) throw dimension_error("union_frame: vector length mismatch");
    v.set_column(a.size() + k, extra[k]);
  }
  return make_frame(std::move(v), default_spanning_tol, a.label());
}

inline Frame union_frame(const Frame& a, const Frame& b) {
  if (a.dim() != b.dim())
    throw dimension_error("union_frame: dim " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  std::vector<ComplexVector> extra;
  for (std::size_t n = 0; n < b.size(); ++n) extra.push_back(b.vector(n));
  return union_frame(a, extra);
}

// Three unit vectors of R^2 at 0°, 120°, 240°; S = (3/2)·I.
inline Frame mercedes_frame() {
  ComplexMatrix v(2, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const double t = 2.0 * std::numbers::pi * double(k) / 3.0;
    v(0, k) = std::cos(t);
    v(1, k) = std::sin(t);
  }
  return make_frame(std::move(v), default_spanning_tol, "mercedes");
}

inline Frame standard_basis(std::size_t dim) {
  return make_frame(ComplexMatrix::identity(dim), default_spanning_tol, "standard");
}

// ONB given by the columns of a unitary matrix.
inline Frame basis_frame(const ComplexMatrix& unitary, std::string label = {}) {
  return make_frame(unitary, default_spanning_tol, std::move(label));
}

}  // namespace framelab
