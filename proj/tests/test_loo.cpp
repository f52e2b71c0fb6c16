#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace entb;
using namespace entb::test;

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Orthonormality and completeness checked element by element, without
// diagnose_loo_set.
void check_loo_invariants(const LooSet& set, double tol) {
  const int d = set.dim;
  REQUIRE(set.observables.size() == static_cast<std::size_t>(d * d));
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < set.observables.size(); ++i) {
    const ComplexMatrix& g = set.observables[i];
    CHECK(max_abs(g - g.adjoint()) <= tol);
    for (std::size_t j = 0; j < set.observables.size(); ++j) {
      const Complex ip = (g * set.observables[j]).trace();
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= tol);
    }
    sum += g * g;
  }
  CHECK(max_abs(sum - d * ComplexMatrix::Identity(d, d)) <= tol);
}

}  // namespace

TEST_CASE("standard LOOs for d = 2") {
  const LooSet s = standard_loos(2);
  const double r = 1.0 / std::sqrt(2.0);
  REQUIRE(s.observables.size() == 4);
  CHECK(max_abs(s.observables[0] - mat2(1, 0, 0, 0)) < 1e-15);
  CHECK(max_abs(s.observables[1] - mat2(0, 0, 0, 1)) < 1e-15);
  CHECK(max_abs(s.observables[2] - mat2(0, r, r, 0)) < 1e-15);
  CHECK(max_abs(s.observables[3] - mat2(0, -kI * r, kI * r, 0)) < 1e-15);
}

TEST_CASE("standard LOO invariants for d = 2..6") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    check_loo_invariants(standard_loos(d), 1e-12);
    CHECK(diagnose_loo_set(standard_loos(d).observables, d).ok());
  }
  Rng rng(8);
  const ComplexMatrix u = random_unitary(3, rng);
  check_loo_invariants(standard_loos(3, u), 1e-10);
}

TEST_CASE("non-orthonormal basis is rejected") {
  ComplexMatrix b = ComplexMatrix::Identity(3, 3);
  b(0, 1) = 0.5;
  CHECK_THROWS_WITH_AS(standard_loos(3, b), doctest::Contains("BadBasis"), Error);
  CHECK_THROWS_AS(gellmann(3, b), Error);
}

TEST_CASE("make_loo_set rejects broken sets") {
  auto obs = standard_loos(2).observables;
  obs[0] *= 1.1;
  CHECK_THROWS_WITH_AS(make_loo_set(obs, 2), doctest::Contains("NotLOO"), Error);
  obs = standard_loos(2).observables;
  obs.pop_back();
  CHECK_THROWS_AS(make_loo_set(obs, 2), Error);
  obs = standard_loos(2).observables;
  obs[3] = kI * obs[3];
  CHECK_THROWS_AS(make_loo_set(obs, 2), Error);
}

TEST_CASE("Gell-Mann generators") {
  const GeneratorSet g2 = gellmann(2);
  REQUIRE(g2.generators.size() == 3);
  CHECK(max_abs(g2.generators[0] - mat2(1, 0, 0, -1)) < 1e-15);
  CHECK(max_abs(g2.generators[1] - mat2(0, 1, 1, 0)) < 1e-15);
  CHECK(max_abs(g2.generators[2] - mat2(0, -kI, kI, 0)) < 1e-15);

  for (int d = 2; d <= 5; ++d) {
    const GeneratorSet g = gellmann(d);
    REQUIRE(g.generators.size() == static_cast<std::size_t>(d * d - 1));
    std::vector<ComplexMatrix> scaled{ComplexMatrix::Identity(d, d) / std::sqrt(double(d))};
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
      CHECK(std::abs(g.generators[i].trace()) < 1e-14);
      for (std::size_t j = 0; j < g.generators.size(); ++j)
        CHECK(std::abs((g.generators[i] * g.generators[j]).trace() - (i == j ? 2.0 : 0.0)) < 1e-12);
      scaled.push_back(g.generators[i] / std::sqrt(2.0));
    }
    check_loo_invariants(make_loo_set(scaled, d), 1e-12);
  }
}

TEST_CASE("rotations") {
  const LooSet s = standard_loos(3);
  const LooSet same = rotate(s, RealMatrix::Identity(9, 9));
  for (int i = 0; i < 9; ++i) CHECK(max_abs(same.observables[i] - s.observables[i]) == 0.0);

  RealMatrix perm = RealMatrix::Zero(9, 9);
  for (int i = 0; i < 9; ++i) perm(i, (i + 4) % 9) = -1.0;
  const LooSet p = rotate(s, perm);
  for (int i = 0; i < 9; ++i) CHECK(max_abs(p.observables[i] + s.observables[(i + 4) % 9]) == 0.0);

  RealMatrix bad = RealMatrix::Identity(9, 9);
  bad(0, 1) = 0.01;
  CHECK_THROWS_WITH_AS(rotate(s, bad), doctest::Contains("NotOrthogonal"), Error);
  CHECK_THROWS_AS(rotate(s, RealMatrix::Identity(4, 4)), Error);

  const RealMatrix o = random_orthogonal(9, 17);
  CHECK((o * o.transpose() - RealMatrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((o - random_orthogonal(9, 17)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(random_orthogonal(1, 3)(0, 0)) == 1.0);

  const LooSet r = rotate(s, o);
  check_loo_invariants(r, 1e-10);
  const LooSet back = rotate(standard_loos(3), loo_coordinates(r));
  for (int i = 0; i < 9; ++i) CHECK(max_abs(back.observables[i] - r.observables[i]) < 1e-12);
}

TEST_CASE("row-sum property of LOO sets") {
  Rng rng(99);
  for (int d : {2, 3}) {
    for (int t = 0; t < 100; ++t) {
      const LooSet set = rotate(standard_loos(d), random_orthogonal(d * d, rng));
      const ComplexMatrix u = random_unitary(d, rng);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double s = 0.0;
          for (const auto& g : set.observables) s += std::norm(u.col(a).dot(g * u.col(b)));
          CHECK(std::abs(s - 1.0) <= 1e-9);
        }
    }
  }
}

TEST_CASE("LooPair pads the smaller side") {
  const LooPair pair(standard_loos(2), standard_loos(3));
  CHECK(pair.dims() == BipartiteDims{2, 3});
  CHECK(pair.size() == 9);
  CHECK(max_abs(pair.a(3) - standard_loos(2).observables[3]) == 0.0);
  for (std::size_t i = 4; i < 9; ++i) CHECK(pair.a(i).isZero());
  CHECK_THROWS_AS(LooPair(standard_loos(3), standard_loos(2)), Error);
}

TEST_CASE("lemma1 pair attains the pure-state value") {
  SUBCASE("Bell") {
    const PureState psi = *reference_pure_state("bell", {{"M", 2}});
    const LooPair pair = lemma1_pair(schmidt(psi));
    CHECK(std::abs(lurs_variance_sum(to_density(psi), pair)) < 1e-12);
  }
  SUBCASE("product") {
    const PureState psi = make_pure_state(ket(6, 1), {2, 3});
    const LooPair pair = lemma1_pair(schmidt(psi));
    CHECK(lurs_variance_sum(to_density(psi), pair) == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("random") {
    Rng rng(21);
    for (const auto d : kPropertyDims)
      for (int t = 0; t < 50; ++t) {
        const PureState psi = random_pure_state(d, rng);
        const auto sd = schmidt(psi);
        const LooPair pair = lemma1_pair(sd);
        check_loo_invariants(pair.set_a(), 1e-10);
        check_loo_invariants(pair.set_b(), 1e-10);
        CHECK(std::abs(lurs_variance_sum(to_density(psi), pair) - lemma1_rhs(d, sd.coefficients)) < 1e-9);
      }
  }
}

TEST_CASE("isotropic pair") {
  for (int m : {2, 3, 4}) {
    const LooPair pair = isotropic_pair(m, m);
    check_loo_invariants(pair.set_a(), 1e-12);
    check_loo_invariants(pair.set_b(), 1e-12);
    const DensityMatrix phi = make_family("bell", {{"M", double(m)}});
    CHECK(std::abs(lurs_variance_sum(phi, pair)) < 1e-12);
  }
  CHECK_THROWS_WITH_AS(isotropic_pair(2, 3), doctest::Contains("DimensionMismatch"), Error);
}
