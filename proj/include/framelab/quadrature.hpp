#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "framelab/error.hpp"

namespace framelab {

struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending, in (−1, 1)
  std::vector<double> weights;  // sum to 2
};

// Newton iteration on P_n from the Chebyshev-like initial guesses.
inline GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw domain_error("gauss_legendre: n must be >= 1");
  GaussLegendreRule r{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = pk;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) / double(k);
      p0 = p1;
      p1 = pk;
    }
    dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

// Pairwise (cascade) summation; the result does not depend on how the
// terms were produced, only on their order.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t mid = x.size() / 2;
  return pairwise_sum(x.first(mid)) + pairwise_sum(x.subspan(mid));
}

}  // namespace framelab
