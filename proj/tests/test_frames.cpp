#include <catch_amalgamated.hpp>

#include <cmath>

#include "framelab.hpp"

using namespace framelab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Frame e1_e1_e2() {
  const std::vector<ComplexVector> v{{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  return make_frame(v, 2);
}

// Σ_n |⟨f, f_n⟩|² computed directly from the vectors.
double analysis_energy(const Frame& fr, const ComplexVector& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < fr.size(); ++n) s += std::norm(inner(f, fr.vector(n)));
  return s;
}

}  // namespace

TEST_CASE("make_frame: bounds of small families") {
  const Frame e3 = standard_basis(3);
  CHECK(e3.lower_bound() == 1.0);
  CHECK(e3.upper_bound() == 1.0);

  const Frame f = e1_e1_e2();
  CHECK_THAT(f.lower_bound(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(f.upper_bound(), WithinAbs(2.0, 1e-15));

  const std::vector<ComplexVector> with_zero{{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}};
  const Frame z = make_frame(with_zero, 2);
  CHECK(z.lower_bound() == 1.0);
  CHECK(z.upper_bound() == 1.0);

  const std::vector<ComplexVector> degenerate{{1.0, 0.0}, {2.0, 0.0}};
  try {
    make_frame(degenerate, 2);
    FAIL("expected rejection");
  } catch (const not_a_frame_error& e) {
    CHECK(e.lambda_min() <= 1e-10 * 5.0);
  }
  const std::vector<ComplexVector> wrong_len{{1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(make_frame(wrong_len, 2), dimension_error);
  CHECK_THROWS(make_frame(std::vector<ComplexVector>{}, 2));
}

TEST_CASE("synthesis operator") {
  CHECK(synthesis(standard_basis(3)).matrix == ComplexMatrix::identity(3));
  CHECK(synthesis(e1_e1_e2()).matrix == ComplexMatrix::from_rows({{1.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}));
  const ComplexMatrix m = synthesis(mercedes_frame()).matrix;
  CHECK_THAT(m(0, 1).real(), WithinAbs(-0.5, 1e-15));
  CHECK_THAT(m(1, 1).real(), WithinAbs(std::sqrt(3.0) / 2.0, 1e-15));
  CHECK_THAT(m(1, 2).real(), WithinAbs(-std::sqrt(3.0) / 2.0, 1e-15));

  const Frame f = random_frame(4, 9, 50.0, 17);
  const ComplexMatrix a = synthesis(f).matrix;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const ComplexVector ek = unit_vector(f.size(), k);
    CHECK((a * ek) == f.vector(k));
  }
  CHECK(relative_distance(a * a.adjoint(), f.frame_operator()) < 1e-12);
}

TEST_CASE("certify_synthesis") {
  auto c = certify_synthesis(standard_basis(4));
  CHECK(c.passed);
  CHECK_THAT(c.synthesis_norm_sq, WithinAbs(1.0, 1e-12));

  c = certify_synthesis(e1_e1_e2());
  CHECK(c.passed);
  CHECK_THAT(c.synthesis_norm_sq, WithinAbs(2.0, 1e-12));
  CHECK(c.rank == 2);
  CHECK(c.frame_size == 3);

  const Frame pm = canonical_parseval(mercedes_frame());
  c = certify_synthesis(pm);
  CHECK(c.passed);
  CHECK_THAT(c.synthesis_norm_sq, WithinAbs(1.0, 1e-12));
  CHECK(relative_distance(pm.frame_operator(), ComplexMatrix::identity(2)) < 1e-14);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Frame f = random_frame(5, 5 + seed % 11, 100.0, seed);
    const auto cert = certify_synthesis(f, 1e-9, seed);
    CHECK(cert.passed);
    CHECK(cert.aa_min == f.lower_bound());
    CHECK(cert.aa_max == f.upper_bound());
    CHECK(cert.analysis_defect < 1e-10);
  }
}

TEST_CASE("frame inequality on seeded probes") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Frame f = random_frame(6, 14, 30.0, 100 + seed);
    Rng rng(seed);
    for (int k = 0; k < 200; ++k) {
      const ComplexVector g = random_unit_vector(6, rng);
      const double e = analysis_energy(f, g);
      CHECK(e >= f.lower_bound() * (1.0 - 1e-10));
      CHECK(e <= f.upper_bound() * (1.0 + 1e-10));
      CHECK_THAT(norm_sq(f.vectors().adjoint() * g), WithinRel(e, 1e-10));
    }
    CHECK(relative_distance(f.frame_operator(), gram_accumulation(f.vectors())) == 0.0);
  }
}

TEST_CASE("canonical Parseval frame") {
  const Frame onb = random_onb(4, 3);
  CHECK(relative_distance(canonical_parseval(onb).vectors(), onb.vectors()) < 1e-13);

  const Frame m = canonical_parseval(mercedes_frame());
  for (std::size_t n = 0; n < 3; ++n) CHECK_THAT(norm(m.vector(n)), WithinRel(std::sqrt(2.0 / 3.0), 1e-14));

  const Frame p = canonical_parseval(e1_e1_e2());
  CHECK_THAT(p.vectors()(0, 0).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(p.vectors()(0, 1).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(p.vectors()(1, 2).real(), WithinAbs(1.0, 1e-15));

  const Frame r = random_frame(5, 12, 100.0, 8);
  const Frame pr = canonical_parseval(r);
  CHECK(pr.is_parseval(1e-12));
  CHECK(relative_distance(canonical_parseval(pr).vectors(), pr.vectors()) < 1e-9);
  for (std::size_t n = 0; n < pr.size(); ++n) CHECK(norm(pr.vector(n)) <= 1.0 + 1e-12);
}

TEST_CASE("rescaling") {
  const Frame onb = random_onb(3, 1);
  CHECK(relative_distance(rescale_upper_bound_one(onb).vectors(), onb.vectors()) < 1e-14);
  const Frame f = rescale_upper_bound_one(e1_e1_e2());
  CHECK_THAT(f.lower_bound(), WithinAbs(0.5, 1e-15));
  CHECK_THAT(f.upper_bound(), WithinAbs(1.0, 1e-15));
  const Frame m = rescale_upper_bound_one(mercedes_frame());
  CHECK_THAT(m.lower_bound(), WithinAbs(1.0, 1e-14));
  CHECK_THAT(m.upper_bound(), WithinAbs(1.0, 1e-14));
  const Frame l = rescale_lower_bound_one(e1_e1_e2());
  CHECK_THAT(l.lower_bound(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(l.upper_bound(), WithinAbs(2.0, 1e-15));

  // ‖f_n‖² <= C2 for every vector
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Frame g = rescale_upper_bound_one(random_frame(4, 10, 1e3, seed));
    for (std::size_t n = 0; n < g.size(); ++n) CHECK(norm_sq(g.vector(n)) <= g.upper_bound() * (1.0 + 1e-12));
  }
}

TEST_CASE("random ONBs") {
  const Frame one = random_onb(1, 5);
  CHECK_THAT(std::abs(one.vectors()(0, 0)), WithinAbs(1.0, 1e-15));
  CHECK(one.vectors()(0, 0).imag() == 0.0);
  for (std::size_t d : {2u, 5u, 16u}) {
    const Frame b = random_onb(d, 77);
    CHECK_THAT(b.lower_bound(), WithinAbs(1.0, 1e-10));
    CHECK_THAT(b.upper_bound(), WithinAbs(1.0, 1e-10));
    CHECK(b.vectors() == random_onb(d, 77).vectors());
    CHECK(relative_distance(b.vectors(), random_onb(d, 78).vectors()) > 0.1);
    for (std::size_t j = 0; j < d; ++j) {
      CHECK(b.vectors()(0, j).imag() == 0.0);
      CHECK(b.vectors()(0, j).real() > 0.0);
    }
  }
  CHECK_THROWS_AS(random_onb(0, 1), domain_error);
}

TEST_CASE("random frames") {
  const Frame p = random_frame(4, 7, 1.0, 3);
  CHECK(p.is_parseval(1e-12));
  const Frame f = random_frame(2, 3, 10.0, 9);
  CHECK(certify_synthesis(f).passed);
  CHECK(f.condition() <= 10.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Frame sq = random_frame(5, 5, 1e3, seed);
    CHECK(sq.lower_bound() > 0.0);
    CHECK(sq.condition() <= 1e3);
  }
  CHECK(random_frame(3, 8, 20.0, 4).vectors() == random_frame(3, 8, 20.0, 4).vectors());
  CHECK_THROWS_AS(random_frame(3, 2, 10.0, 1), domain_error);
  CHECK_THROWS_AS(random_frame(3, 4, 0.5, 1), domain_error);
}

TEST_CASE("union of frames") {
  const Frame a = random_onb(3, 1), b = random_onb(3, 2);
  const Frame ab = union_frame(a, b);
  CHECK(relative_distance(ab.frame_operator(), a.frame_operator() + b.frame_operator()) < 1e-14);
  CHECK(ab.lower_bound() >= a.lower_bound() + b.lower_bound() - 1e-12);
  CHECK(ab.upper_bound() <= a.upper_bound() + b.upper_bound() + 1e-12);

  const Frame twice = union_frame(a, a);
  CHECK_THAT(twice.lower_bound(), WithinAbs(2.0, 1e-13));
  CHECK_THAT(twice.upper_bound(), WithinAbs(2.0, 1e-13));

  const std::vector<ComplexVector> zeros{{0.0, 0.0, 0.0}};
  const Frame az = union_frame(standard_basis(3), zeros);
  CHECK(az.lower_bound() == 1.0);
  CHECK(az.upper_bound() == 1.0);

  const std::vector<ComplexVector> e1{{1.0, 0.0, 0.0}};
  const Frame ae = union_frame(standard_basis(3), e1);
  CHECK_THAT(ae.lower_bound(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(ae.upper_bound(), WithinAbs(2.0, 1e-15));

  CHECK_THROWS_AS(union_frame(standard_basis(2), standard_basis(3)), dimension_error);
}
