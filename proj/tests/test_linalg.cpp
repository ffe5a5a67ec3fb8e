#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "framelab.hpp"
#include "oracles.hpp"

using namespace framelab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr complex I{0.0, 1.0};

double unitarity_defect(const ComplexMatrix& u) {
  return relative_distance(u.adjoint() * u, ComplexMatrix::identity(u.cols()));
}

}  // namespace

TEST_CASE("matrix construction and arithmetic") {
  const auto a = ComplexMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  CHECK(a.rows() == 2);
  CHECK(a(1, 0) == complex{3.0});
  CHECK((a * ComplexMatrix::identity(2)) == a);
  CHECK((a.adjoint())(0, 1) == complex{3.0});
  const auto b = a * a;
  CHECK(b(0, 0) == complex{7.0});
  CHECK(b(1, 1) == complex{22.0});

  CHECK_THROWS_AS(ComplexMatrix(0, 3), dimension_error);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), dimension_error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {complex{std::nan(""), 0.0}}), domain_error);
  CHECK_THROWS_AS(a + ComplexMatrix(3, 3), dimension_error);
}

TEST_CASE("inner product is linear in the first argument") {
  const ComplexVector x{1.0, I};
  const ComplexVector y{I, 1.0};
  CHECK(inner(x, y) == complex{1.0} * std::conj(I) + I * 1.0);
  CHECK(inner(scaled(x, I), y) == I * inner(x, y));
  CHECK_THAT(norm(x), WithinRel(std::sqrt(2.0), 1e-15));
}

TEST_CASE("hermitian_eigen: small cases") {
  SECTION("diagonal") {
    const auto e = hermitian_eigen(ComplexMatrix::diagonal({1.0, 2.0, 3.0}));
    CHECK(e.eigenvalues == std::vector<double>{3.0, 2.0, 1.0});
    CHECK(std::abs(e.eigenvectors(2, 0)) == 1.0);
    CHECK(std::abs(e.eigenvectors(0, 2)) == 1.0);
  }
  SECTION("[[2,1],[1,2]]") {
    const auto e = hermitian_eigen(ComplexMatrix::from_rows({{2.0, 1.0}, {1.0, 2.0}}));
    CHECK_THAT(e.eigenvalues[0], WithinAbs(3.0, 1e-14));
    CHECK_THAT(e.eigenvalues[1], WithinAbs(1.0, 1e-14));
  }
  SECTION("Pauli y") {
    const auto e = hermitian_eigen(ComplexMatrix::from_rows({{0.0, -I}, {I, 0.0}}));
    CHECK_THAT(e.eigenvalues[0], WithinAbs(1.0, 1e-14));
    CHECK_THAT(e.eigenvalues[1], WithinAbs(-1.0, 1e-14));
  }
  SECTION("rejections") {
    CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})), not_hermitian_error);
    CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix(2, 3)), dimension_error);
    try {
      hermitian_eigen(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));
    } catch (const not_hermitian_error& e) {
      CHECK(e.defect() == 1.0);
    }
  }
}

TEST_CASE("hermitian_eigen: seeded random matrices") {
  for (std::size_t d : {1u, 2u, 3u, 5u, 8u, 13u, 24u}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed * 101 + d);
      const ComplexMatrix h = random_hermitian(d, rng);
      const auto e = hermitian_eigen(h);
      CHECK(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
      CHECK(unitarity_defect(e.eigenvectors) < 1e-13);
      const ComplexMatrix rec = spectral_apply(e, [](double mu) { return mu; });
      CHECK(relative_distance(rec, h) < 1e-13);
      double tr = 0.0;
      for (double mu : e.eigenvalues) tr += mu;
      CHECK_THAT(tr, WithinAbs(trace(h).real(), 1e-12 * (1.0 + frobenius_norm(h))));
      // |eigenvalues| are the singular values
      std::vector<double> mags;
      for (double mu : e.eigenvalues) mags.push_back(std::abs(mu));
      std::sort(mags.rbegin(), mags.rend());
      const auto sv = oracle::singular_values(h);
      for (std::size_t k = 0; k < d; ++k) CHECK_THAT(mags[k], WithinAbs(sv[k], 1e-12 * sv[0]));
    }
  }
}

TEST_CASE("hermitian_eigen: degenerate and clustered spectra") {
  Rng rng(7);
  const ComplexMatrix u = random_unitary(6, rng);
  const ComplexMatrix h = u * ComplexMatrix::diagonal({2.0, 2.0, 2.0, 1.0 + 1e-13, 1.0, 0.0}) * u.adjoint();
  const auto e = hermitian_eigen(h);
  CHECK_THAT(e.eigenvalues[0], WithinAbs(2.0, 1e-13));
  CHECK_THAT(e.eigenvalues[5], WithinAbs(0.0, 1e-13));
  CHECK(unitarity_defect(e.eigenvectors) < 1e-13);
}

TEST_CASE("svd: documented examples") {
  CHECK(singular_values(ComplexMatrix::identity(3)) == std::vector<double>{1.0, 1.0, 1.0});
  auto s = singular_values(ComplexMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}}));
  CHECK_THAT(s[0], WithinAbs(2.0, 1e-15));
  CHECK(s[1] == 0.0);
  s = singular_values(ComplexMatrix::from_rows({{3.0, 0.0}, {4.0, 0.0}}));
  CHECK_THAT(s[0], WithinAbs(5.0, 1e-14));
  CHECK(s[1] == 0.0);
}

TEST_CASE("svd: random rectangular matrices against one-sided Jacobi") {
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {3, 3}, {8, 8}, {5, 9}, {9, 4}, {16, 16}}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      Rng rng(seed + 1000 * m + n);
      const ComplexMatrix t = random_gaussian_matrix(m, n, rng);
      const SpectralData sd = svd(t);
      const auto ref = oracle::singular_values(t);
      REQUIRE(sd.singular_values.size() == ref.size());
      for (std::size_t k = 0; k < ref.size(); ++k)
        CHECK_THAT(sd.singular_values[k], WithinAbs(ref[k], 1e-12 * ref[0]));
      CHECK(unitarity_defect(sd.left_vectors) < 1e-12);
      CHECK(unitarity_defect(sd.right_vectors) < 1e-12);
      CHECK(relative_distance(sd.reconstruct(), t) < 1e-12);
      const auto fast = singular_values(t);
      for (std::size_t k = 0; k < ref.size(); ++k) CHECK_THAT(fast[k], WithinAbs(ref[k], 1e-12 * ref[0]));
    }
  }
}

TEST_CASE("svd: rank-deficient input completes the left basis") {
  const ComplexVector h{1.0, 2.0, I, 0.5};
  const ComplexMatrix t = outer(h);
  const SpectralData sd = svd(t);
  CHECK_THAT(sd.singular_values[0], WithinRel(norm_sq(h), 1e-14));
  for (std::size_t k = 1; k < 4; ++k) CHECK(sd.singular_values[k] < 1e-14);
  CHECK(unitarity_defect(sd.left_vectors) < 1e-13);
  CHECK(relative_distance(sd.reconstruct(), t) < 1e-13);
}

TEST_CASE("schatten norms") {
  CHECK_THAT(schatten_norm(ComplexMatrix::diagonal({3.0, 4.0}), 2.0), WithinRel(5.0, 1e-15));
  for (double p : {0.3, 1.0, 2.5, 7.0})
    CHECK_THAT(schatten_norm(ComplexMatrix::identity(4), p), WithinRel(std::pow(4.0, 1.0 / p), 1e-14));
  CHECK_THAT(schatten_norm(ComplexMatrix::diagonal({1.0, 0.5, 0.25}), 1.0), WithinRel(1.75, 1e-15));
  CHECK_THROWS_AS(schatten_norm(ComplexMatrix::identity(2), 0.0), domain_error);
  CHECK_THROWS_AS(schatten_norm(ComplexMatrix::identity(2), -1.0), domain_error);

  SECTION("rank one keeps ‖h‖² for small p") {
    const ComplexVector h{0.3, 1.0, -0.7 * I, 0.2, 0.1};
    const ComplexMatrix t = outer(h);
    for (double p : {0.1, 0.25, 0.5, 1.0, 3.0})
      CHECK_THAT(schatten_norm(t, p), WithinRel(norm_sq(h), 1e-10));
  }
  SECTION("operator norm") {
    CHECK(operator_norm(ComplexMatrix::diagonal({2.0, 7.0, 1.0})) == 7.0);
    CHECK(operator_norm(ComplexMatrix(3, 3)) == 0.0);
    CHECK_THAT(operator_norm(ComplexMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}})), WithinAbs(2.0, 1e-15));
  }
  SECTION("random matrices against the oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      const ComplexMatrix t = random_operator(8, rng);
      const auto ref = oracle::singular_values(t);
      for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0})
        CHECK_THAT(schatten_power_sum(t, p), WithinRel(oracle::schatten_pp(ref, p), 1e-11));
      CHECK_THAT(schatten_power_sum(t, 2.0), WithinRel(frobenius_norm(t) * frobenius_norm(t), 1e-12));
    }
  }
}

TEST_CASE("psd_sqrt and psd_power") {
  CHECK(relative_distance(psd_sqrt(ComplexMatrix::diagonal({4.0, 9.0})), ComplexMatrix::diagonal({2.0, 3.0})) < 1e-15);
  CHECK(relative_distance(psd_sqrt(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) < 1e-15);
  const ComplexMatrix s = ComplexMatrix::from_rows({{2.0, 1.0}, {1.0, 2.0}});
  const ComplexMatrix r = psd_sqrt(s);
  CHECK(relative_distance(r * r, s) < 1e-14);
  const auto ev = hermitian_eigen(r).eigenvalues;
  CHECK_THAT(ev[0], WithinAbs(std::sqrt(3.0), 1e-14));
  CHECK_THAT(ev[1], WithinAbs(1.0, 1e-14));

  try {
    psd_sqrt(ComplexMatrix::diagonal({1.0, -0.5}));
    FAIL("expected rejection");
  } catch (const not_psd_error& e) {
    CHECK(e.min_eigenvalue() == -0.5);
  }
  Rng rng(3);
  const ComplexMatrix p = random_psd(6, rng);
  CHECK(relative_distance(psd_power(p, 0.5) * psd_power(p, 0.5), p) < 1e-12);
  CHECK(relative_distance(psd_power(p, 1.0), p) < 1e-12);
  CHECK(is_psd(p));
  CHECK_FALSE(is_psd(ComplexMatrix::diagonal({1.0, -1.0})));
  CHECK_FALSE(is_psd(ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}})));
}

TEST_CASE("self-adjoint parts") {
  const auto h = ComplexMatrix::from_rows({{1.0, I}, {-I, 2.0}});
  auto parts = self_adjoint_parts(h);
  CHECK(relative_distance(parts.t1, h) < 1e-16);
  CHECK(max_abs(parts.t2) == 0.0);

  parts = self_adjoint_parts(ComplexMatrix::identity(2) * I);
  CHECK(max_abs(parts.t1) == 0.0);
  CHECK(relative_distance(parts.t2, ComplexMatrix::identity(2)) < 1e-16);

  const auto n = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  parts = self_adjoint_parts(n);
  CHECK(parts.t1 == ComplexMatrix::from_rows({{0.0, 0.5}, {0.5, 0.0}}));
  CHECK(hermitian_defect(parts.t2) == 0.0);
  CHECK(relative_distance(parts.t1 + parts.t2 * I, n) < 1e-16);
  CHECK_THROWS_AS(self_adjoint_parts(ComplexMatrix(2, 3)), dimension_error);

  Rng rng(11);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix t = random_gaussian_matrix(5, 5, rng);
    const auto p = self_adjoint_parts(t);
    CHECK(hermitian_defect(p.t1) < 1e-15);
    CHECK(hermitian_defect(p.t2) < 1e-15);
    CHECK(relative_distance(p.t1 + p.t2 * I, t) < 1e-15);
  }
}

TEST_CASE("positive four parts") {
  auto check_parts = [](const ComplexMatrix& s, const PositiveParts& pp) {
    for (const auto& x : pp.parts) CHECK(is_psd(x));
    const ComplexMatrix rec = (pp.parts[0] - pp.parts[1]) + (pp.parts[2] - pp.parts[3]) * I;
    CHECK(relative_distance(rec, s) < 1e-13);
  };
  Rng rng(5);
  const ComplexMatrix p = random_psd(4, rng);
  auto pp = positive_four_parts(p);
  CHECK(relative_distance(pp.parts[0], p) < 1e-13);
  CHECK(max_abs(pp.parts[1]) < 1e-13);
  check_parts(p, pp);

  pp = positive_four_parts(ComplexMatrix::diagonal({1.0, -1.0}));
  CHECK(relative_distance(pp.parts[0], ComplexMatrix::diagonal({1.0, 0.0})) < 1e-15);
  CHECK(relative_distance(pp.parts[1], ComplexMatrix::diagonal({0.0, 1.0})) < 1e-15);

  pp = positive_four_parts(ComplexMatrix::diagonal({1.0, -1.0}) * I);
  CHECK(max_abs(pp.parts[0]) == 0.0);
  CHECK(relative_distance(pp.parts[2], ComplexMatrix::diagonal({1.0, 0.0})) < 1e-15);
  CHECK(relative_distance(pp.parts[3], ComplexMatrix::diagonal({0.0, 1.0})) < 1e-15);

  for (int k = 0; k < 5; ++k) {
    const ComplexMatrix t = random_gaussian_matrix(6, 6, rng);
    check_parts(t, positive_four_parts(t));
  }
}

TEST_CASE("trace pairing") {
  CHECK(trace_pairing(ComplexMatrix::identity(3), ComplexMatrix::identity(3)) == complex{3.0});
  CHECK(trace_pairing(ComplexMatrix::diagonal({1.0, 2.0}), ComplexMatrix::diagonal({3.0, 4.0})) == complex{11.0});
  Rng rng(99);
  const ComplexMatrix t = random_gaussian_matrix(4, 4, rng), s = random_gaussian_matrix(4, 4, rng);
  CHECK(std::abs(trace_pairing(t, s) - oracle::trace_product(t, s)) < 1e-13);
  CHECK_THROWS_AS(trace_pairing(t, ComplexMatrix(3, 3)), dimension_error);
}

TEST_CASE("random generators are deterministic per seed") {
  Rng a(42), b(42), c(43);
  const ComplexMatrix ma = random_gaussian_matrix(3, 3, a);
  CHECK(ma == random_gaussian_matrix(3, 3, b));
  CHECK(ma != random_gaussian_matrix(3, 3, c));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));

  Rng g(1);
  double m1 = 0.0, m2 = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double x = g.gaussian();
    m1 += x;
    m2 += x * x;
  }
  CHECK(std::abs(m1 / n) < 0.01);
  CHECK(std::abs(m2 / n - 1.0) < 0.02);
  Rng u(2);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
}
