#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include "framelab.hpp"
#include "oracles.hpp"

using namespace framelab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// β from the logarithmic form, independent of the library's atanh.
double beta(complex z, complex w) {
  const double rho = std::abs((z - w) / (1.0 - std::conj(z) * w));
  return 0.5 * std::log((1.0 + rho) / (1.0 - rho));
}

complex random_point(Rng& rng, double rmax) {
  const double r = rmax * std::sqrt(rng.uniform());
  return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
}

}  // namespace

TEST_CASE("truncated Bergman space") {
  const TruncatedBergman b(4);
  const std::vector<double> s = b.onb_scaling();
  CHECK(s[0] == 1.0);
  CHECK_THAT(s[3], WithinRel(2.0, 1e-15));
  // Monomial ONB orthonormal under the quadrature.
  const DiskQuadrature q = disk_quadrature(32, 64, 1.0);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t m = 0; m < 4; ++m) {
      ComplexVector en(4), em(4);
      en[n] = 1.0;
      em[m] = 1.0;
      complex acc{};
      for (std::size_t k = 0; k < q.size(); ++k)
        acc += b.evaluate(en, q.nodes[k]) * std::conj(b.evaluate(em, q.nodes[k])) * q.weights_dA[k];
      CHECK(std::abs(acc - (n == m ? 1.0 : 0.0)) < 1e-6);
    }
  CHECK_THROWS_AS(TruncatedBergman(0), domain_error);
}

TEST_CASE("bergman_kernel") {
  CHECK(bergman_kernel(0.0, 0.0) == complex{1.0, 0.0});
  CHECK_THAT(bergman_kernel(0.5, 0.5).real(), WithinRel(16.0 / 9.0, 1e-15));
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const complex z = random_point(rng, 0.95), w = random_point(rng, 0.95);
    CHECK(std::abs(bergman_kernel(z, w) - std::conj(bergman_kernel(w, z))) < 1e-12 * std::abs(bergman_kernel(z, w)));
    CHECK_THAT(bergman_kernel(w, w).real(), WithinRel(1.0 / std::pow(1.0 - std::norm(w), 2), 1e-13));
  }
  CHECK_THROWS_AS(bergman_kernel(1.0, 0.0), domain_error);
  CHECK_THROWS_AS(bergman_kernel(0.0, complex{0.0, 2.0}), domain_error);
}

TEST_CASE("kernel coefficients") {
  const ComplexVector k0 = kernel_coefficients(0.0, 5);
  CHECK(k0[0] == complex{1.0, 0.0});
  for (std::size_t n = 1; n < 5; ++n) CHECK(k0[n] == complex{0.0, 0.0});
  CHECK(kernel_tail(0.0, 5) == 0.0);

  const complex half{0.5, 0.0};
  const ComplexVector k = kernel_coefficients(half, 40);
  const double defect = 1.0 - norm_sq(k);
  CHECK(defect < 1e-9);
  CHECK(defect >= 0.0);
  CHECK_THAT(kernel_tail(half, 40), WithinAbs(defect, 1e-15));
  const double x = 0.25;
  CHECK_THAT(kernel_tail(half, 40), WithinRel(std::pow(x, 40) * (41.0 - 40.0 * x), 1e-12));

  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const complex w = random_point(rng, 0.9);
    const ComplexVector c = kernel_coefficients(w, 12);
    const ComplexVector big = kernel_vector(w, 12);
    for (std::size_t n = 0; n < 12; ++n) {
      const complex want = (1.0 - std::norm(w)) * std::sqrt(double(n + 1)) * std::pow(std::conj(w), double(n));
      CHECK(std::abs(c[n] - want) < 1e-13);
      CHECK(std::abs(c[n] - (1.0 - std::norm(w)) * big[n]) < 1e-14);
    }
    CHECK_THAT(norm_sq(c) + kernel_tail(w, 12), WithinRel(1.0, 1e-12));
    // Reproducing property for f = e_2 = √3 z².
    ComplexVector f(12);
    f[2] = 1.0;
    CHECK(std::abs(inner(f, big) - std::sqrt(3.0) * w * w) < 1e-14);
    CHECK(std::abs(TruncatedBergman(12).evaluate(f, w) - inner(f, big)) < 1e-14);
  }
  CHECK_THROWS_AS(kernel_coefficients(complex{0.6, 0.8}, 3), domain_error);
}

TEST_CASE("bergman_metric") {
  CHECK(bergman_metric(0.0, 0.0) == 0.0);
  CHECK_THAT(bergman_metric(0.0, 0.5), WithinRel(0.5 * std::log(3.0), 1e-15));
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const complex a = random_point(rng, 0.8), z = random_point(rng, 0.9), w = random_point(rng, 0.9);
    CHECK_THAT(bergman_metric(z, w), WithinAbs(beta(z, w), 1e-12));
    CHECK(bergman_metric(z, w) == bergman_metric(w, z));
    CHECK_THAT(bergman_metric(mobius(a, z), mobius(a, w)), WithinAbs(bergman_metric(z, w), 1e-10));
    CHECK(std::abs(mobius(a, a)) < 1e-15);
  }
  CHECK_THROWS_AS(bergman_metric(0.0, 1.0), domain_error);
}

TEST_CASE("r_lattice") {
  const SamplingLattice one = r_lattice(10.0, 0.9);
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0] == complex{0.0, 0.0});

  const SamplingLattice lat = r_lattice(0.5, 0.9);
  double brute = HUGE_VAL;
  for (std::size_t i = 0; i < lat.points.size(); ++i) {
    CHECK(std::abs(lat.points[i]) <= 0.9);
    for (std::size_t j = i + 1; j < lat.points.size(); ++j) brute = std::min(brute, beta(lat.points[i], lat.points[j]));
  }
  CHECK(brute >= 0.5);
  CHECK_THAT(lat.min_pairwise, WithinAbs(brute, 1e-12));
  CHECK(lat.separation == 0.5);

  std::size_t prev = 0;
  for (double r : {0.5, 0.7, 0.9, 0.95, 0.99}) {
    const std::size_t n = r_lattice(0.5, r).points.size();
    CHECK(n >= prev);
    prev = n;
  }
  CHECK(prev > r_lattice(0.5, 0.5).points.size());
  CHECK_THROWS_AS(r_lattice(0.0, 0.9), domain_error);
  CHECK_THROWS_AS(r_lattice(0.5, 1.0), domain_error);
}

TEST_CASE("sampling_frame") {
  const SamplingFrameReport single = sampling_frame(r_lattice(10.0, 0.9), 1);
  CHECK(single.frame.size() == 1);
  CHECK(single.lower_bound == 1.0);
  CHECK(single.upper_bound == 1.0);

  const SamplingFrameReport dense = sampling_frame(r_lattice(0.3, 0.95), 8);
  CHECK(dense.lower_bound > 0.0);
  CHECK(dense.condition == dense.upper_bound / dense.lower_bound);
  CHECK(certify_synthesis(dense.frame).passed);

  // Sparser lattices at fixed degree: the condition number trends upward.
  // Ring effects make single steps noisy, so the trend is a least-squares slope.
  for (std::size_t d : {6u, 8u}) {
    std::vector<double> xs, ys;
    for (double sep : {0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0, 1.2}) {
      xs.push_back(sep);
      ys.push_back(sampling_frame(r_lattice(sep, 0.95), d).condition);
    }
    const double n = double(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) sxy += (xs[k] - mx) * (ys[k] - my);
    CHECK(sxy > 0.0);
  }
  std::vector<double> conds;
  for (double sep : {0.3, 0.4, 0.5}) conds.push_back(sampling_frame(r_lattice(sep, 0.95), 8).condition);
  CHECK(std::is_sorted(conds.begin(), conds.end()));

  CHECK_THROWS_AS(sampling_frame(r_lattice(10.0, 0.9), 4), not_a_frame_error);
  CHECK_THROWS_AS(sampling_frame(SamplingLattice{}, 2), domain_error);
}

TEST_CASE("disk_quadrature") {
  for (double r : {0.3, 0.9, 0.995}) {
    const DiskQuadrature q = disk_quadrature(16, 32, r);
    CHECK_THAT(pairwise_sum(q.weights_dA), WithinRel(r * r, 1e-12));
    for (const complex w : q.nodes) CHECK(std::abs(w) <= r);
    for (double x : q.weights_dA) CHECK(x > 0.0);
  }
  const DiskQuadrature q = disk_quadrature(16, 32, 0.999);
  for (std::size_t n = 0; n <= 10; ++n) {
    std::vector<double> terms(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) terms[k] = std::pow(std::norm(q.nodes[k]), double(n)) * q.weights_dA[k];
    const double got = pairwise_sum(terms);
    // Relative shortfall against 1/(n+1) is exactly the mass outside rmax.
    const double outside = 1.0 - std::pow(0.999, double(2 * n + 2));
    CHECK_THAT(got, WithinRel(1.0 / double(n + 1), outside + 1e-12));
    if (n <= 4) CHECK_THAT(got, WithinRel(1.0 / double(n + 1), 1e-2));
    CHECK_THAT(got, WithinRel(oracle::radial_moment(n, 0.999), 1e-9));
  }
  for (int n = 1; n < 32; ++n) {
    complex acc{};
    for (std::size_t k = 0; k < q.size(); ++k) acc += std::pow(q.nodes[k], n) * q.weights_dA[k];
    CHECK(std::abs(acc) < 1e-14);
  }
  const DiskQuadrature ql = disk_quadrature(4, 8, 0.5);
  const std::vector<double> wl = ql.weights_dlambda();
  for (std::size_t k = 0; k < ql.size(); ++k)
    CHECK_THAT(wl[k], WithinRel(ql.weights_dA[k] / std::pow(1.0 - std::norm(ql.nodes[k]), 2), 1e-15));
  CHECK_THROWS_AS(disk_quadrature(0, 4, 0.5), domain_error);
  CHECK_THROWS_AS(disk_quadrature(4, 4, 1.5), domain_error);
}

TEST_CASE("Gauss-Legendre rule") {
  for (std::size_t n : {1u, 2u, 5u, 20u, 64u}) {
    const GaussLegendreRule g = gauss_legendre(n);
    CHECK_THAT(pairwise_sum(g.weights), WithinRel(2.0, 1e-14));
    CHECK(std::is_sorted(g.nodes.begin(), g.nodes.end()));
    // Exact for x^{2k}, 2k <= 2n − 1.
    for (std::size_t k = 0; 2 * k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], double(2 * k));
      CHECK_THAT(s, WithinRel(2.0 / double(2 * k + 1), 1e-12));
    }
  }
}

TEST_CASE("integral_criterion") {
  const std::size_t d = 6;
  const DiskQuadrature q = disk_quadrature(32, default_angular_points(d), 0.9);
  CHECK(integral_criterion(ComplexMatrix(d, d), 1.0, q, d) == 0.0);
  Rng rng(2);
  const ComplexMatrix t = random_operator(d, rng);
  for (double p : {0.5, 1.0, 2.0, 3.0})
    CHECK_THAT(integral_criterion(2.0 * t, p, q, d), WithinRel(std::pow(2.0, p) * integral_criterion(t, p, q, d), 1e-12));

  const std::vector<double> tv{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
  const ComplexMatrix diag = ComplexMatrix::diagonal(std::span<const double>(tv));
  double want = 0.0;
  for (std::size_t n = 0; n < d; ++n) want += tv[n] * tv[n] * double(n + 1) * oracle::radial_moment(n, 0.9);
  CHECK_THAT(integral_criterion(diag, 2.0, q, d), WithinRel(want, 1e-9));
  CHECK_THAT(hs_closed_form(diag, 0.9), WithinRel(want, 1e-9));
  CHECK_THROWS_AS(integral_criterion(ComplexMatrix::identity(3), 2.0, q, d), dimension_error);
}

TEST_CASE("hs_identity_check") {
  SECTION("identity operator") {
    const std::size_t d = 8;
    const DiskQuadrature q = disk_quadrature(64, default_angular_points(d), 0.995);
    const HsIdentityReport r = hs_identity_check(ComplexMatrix::identity(d), q, d);
    CHECK(r.passed);
    CHECK(r.hs_norm_sq == double(d));
    double mass = 0.0;
    for (std::size_t n = 0; n < d; ++n) mass += double(n + 1) * oracle::radial_moment(n, 0.995);
    CHECK_THAT(r.dA_integral, WithinRel(mass, 1e-9));
    CHECK(r.truncation_gap > 0.0);
  }
  SECTION("diagonal operator, degree 4") {
    const ComplexMatrix t = ComplexMatrix::diagonal({1.0, 0.5, 0.25, 0.125});
    const DiskQuadrature q = disk_quadrature(64, default_angular_points(4), 0.995);
    const HsIdentityReport r = hs_identity_check(t, q, 4);
    CHECK(r.passed);
    CHECK(r.closed_form_defect < 1e-3);
    CHECK(r.pointwise_defect <= 1e-12);
    CHECK(r.identity_defect <= 1e-10);
  }
  SECTION("constant mode") {
    const DiskQuadrature q = disk_quadrature(8, 8, 0.7);
    const HsIdentityReport r = hs_identity_check(ComplexMatrix::diagonal({3.0}), q, 1);
    CHECK_THAT(r.dA_integral, WithinRel(9.0 * 0.49, 1e-13));
    CHECK(r.passed);
  }
  SECTION("random operators") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng(seed);
      const ComplexMatrix t = random_operator(10, rng);
      const DiskQuadrature q = disk_quadrature(48, default_angular_points(10), 0.99);
      const HsIdentityReport r = hs_identity_check(t, q, 10);
      CHECK(r.passed);
      CHECK(r.closed_form_defect < 1e-10);
    }
  }
}

TEST_CASE("lattice chain") {
  const std::size_t d = 6;
  Rng rng(9);
  const ComplexMatrix t = random_operator(d, rng);
  const SamplingLattice lat = r_lattice(0.6, 0.9);
  double prev = 0.0;
  for (std::size_t nr : {32u, 64u, 128u}) {
    const DiskQuadrature q = disk_quadrature(nr, default_angular_points(d), 0.9);
    for (double p : {0.5, 1.0, 2.0}) {
      const LatticeChainReport r = lattice_chain(t, p, lat, q, d);
      CHECK(std::isfinite(r.constant));
      CHECK(r.constant > 0.0);
      CHECK(r.points == lat.points.size());
      if (p == 1.0) {
        if (prev > 0.0) CHECK_THAT(r.constant, WithinRel(prev, 1e-3));
        prev = r.constant;
      }
    }
  }
}

TEST_CASE("subharmonicity") {
  SECTION("identity, p = 2") {
    const auto r = subharmonicity_check(ComplexMatrix::identity(8), 2.0, 0.01, 0.9, 8);
    CHECK(r.passed);
    CHECK(r.min_laplacian > 0.0);
    CHECK(r.centers > 1000);
  }
  SECTION("zero operator") {
    const auto r = subharmonicity_check(ComplexMatrix(4, 4), 1.0, 0.05, 0.9, 4);
    CHECK(r.passed);
    CHECK(r.min_laplacian == 0.0);
    CHECK(r.max_f == 0.0);
  }
  SECTION("projection onto the constant mode, p = 1") {
    const auto r = subharmonicity_check(ComplexMatrix::diagonal({1.0, 0.0, 0.0}), 1.0, 0.05, 0.9, 3);
    CHECK(r.passed);
    CHECK_THAT(r.max_f, WithinRel(1.0, 1e-15));
    CHECK(std::abs(r.min_laplacian) < 1e-9);
  }
  SECTION("seeded random operators") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      Rng rng(seed);
      const std::size_t d = 4 + 2 * seed;
      const ComplexMatrix t = random_operator(d, rng);
      for (double p : {0.5, 1.0, 2.0, 3.0}) {
        const auto r = subharmonicity_check(t, p, 0.02, 0.9, d);
        CHECK(r.passed);
        CHECK(r.tolerance == subharmonic_tolerance(r.max_f, 0.02));
      }
    }
  }
  CHECK_THROWS_AS(subharmonicity_check(ComplexMatrix::identity(2), 1.0, 0.95, 0.9, 2), domain_error);
  CHECK_THROWS_AS(subharmonicity_check(ComplexMatrix::identity(2), 0.0, 0.1, 0.9, 2), domain_error);
  CHECK_THROWS_AS(subharmonicity_check(ComplexMatrix::identity(2), 1.0, 0.1, 1.0, 2), domain_error);
}
