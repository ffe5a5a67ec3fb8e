#pragma once
//
// Seeded random ensembles.
//
// std::normal_distribution is implementation-defined, so Gaussians are drawn
// with Box-Muller on top of the (fully specified) mt19937_64 engine. Every
// generator here is a pure function of its seed on every platform.
//

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "framelab/matrix.hpp"

namespace framelab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for (seed, stream tag). Trial seeds are seed + index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x5851f42d4c957f2dULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  // Circular complex Gaussian with E|z|^2 = 1.
  complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

inline ComplexVector random_unit_vector(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  double n = 0.0;
  while (n == 0.0) {
    for (auto& z : v) z = rng.complex_gaussian();
    n = norm(v);
  }
  for (auto& z : v) z /= n;
  return v;
}

// General operator with a spread of singular values: G·diag(s) with s_k log-uniform on [1e-2, 1].
inline ComplexMatrix random_operator(std::size_t dim, Rng& rng) {
  ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
  for (std::size_t j = 0; j < dim; ++j) {
    const double s = std::pow(10.0, -2.0 * rng.uniform());
    for (std::size_t i = 0; i < dim; ++i) g(i, j) *= s;
  }
  return g;
}

inline ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_operator(dim, rng);
  return (g + g.adjoint()) * complex{0.5};
}

inline ComplexMatrix random_psd(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_operator(dim, rng);
  return g * g.adjoint();
}

}  // namespace framelab
