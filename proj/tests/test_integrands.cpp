#include <doctest.h>

#include <cmath>

#include "dppquad/integrands.hpp"
#include "dppquad/quadrature.hpp"

using namespace dppquad;

TEST_CASE("bump values and support") {
  const Integrand f = bump(0.05);
  const double in[] = {0.0};
  CHECK(f(in) == doctest::Approx(std::exp(-1.0 / 0.95)).epsilon(1e-14));
  CHECK(f(in) == doctest::Approx(0.3490).epsilon(1e-3));
  const double cut = std::sqrt(0.95);
  const double outside[] = {cut + 1e-12};
  CHECK(f(outside) == 0.0);
  const double at_cut[] = {cut};
  CHECK(f(at_cut) == 0.0);
  const double pair[] = {0.1, 0.99};
  CHECK(f(pair) == 0.0);
  CHECK_THROWS_AS(bump(0.0), std::invalid_argument);
}

TEST_CASE("bump truth is stable under refinement") {
  const Integrand f = bump(0.05);
  const JacobiParams params = JacobiParams::constant(1, 0.0, 0.0);
  const double t400 = reference_integral(f, params, 400);
  const double t800 = reference_integral(f, params, 800);
  CHECK(t400 == doctest::Approx(t800).epsilon(1e-10));
}

TEST_CASE("eig_sum with one term is the constant basis function") {
  const JacobiParams params = JacobiParams::constant(2, -0.5, 0.5);
  auto basis = std::make_shared<BasisSpec>(params, 5);
  const Integrand f = eig_sum(basis, 1);
  const double x[] = {0.3, -0.7};
  CHECK(f(x) == doctest::Approx(feature_vector(*basis, x)[0]).epsilon(1e-14));
  CHECK(*f.reference_integral ==
        doctest::Approx(std::sqrt(total_mass(params))).epsilon(1e-13));
}

TEST_CASE("eig_sum evaluator matches a direct expansion") {
  const JacobiParams params = JacobiParams::constant(1, 0.0, 0.0);
  auto basis = std::make_shared<BasisSpec>(params, 7);
  const Integrand f = eig_sum(basis, 7);
  const double x[] = {0.42};
  const auto phi = feature_vector(*basis, x);
  double expect = 0.0;
  for (int k = 0; k < 7; ++k) expect += phi[k] / (k + 1.0);
  CHECK(f(x) == doctest::Approx(expect).epsilon(1e-14));
  // reference equals the quadrature of the expansion
  const double quad = integrate_weighted_1d(
      [&](double z) {
        const double pt[] = {z};
        return f(std::span<const double>(pt, 1));
      },
      0.0, 0.0, 64);
  CHECK(quad == doctest::Approx(*f.reference_integral).epsilon(1e-10));
}

TEST_CASE("abs values and truths") {
  const Integrand f = abs_prod();
  const double zero[] = {0.0};
  CHECK(f(zero) == 0.0);
  const double pair[] = {0.5, -0.5};
  CHECK(f(pair) == doctest::Approx(0.25));
  CHECK(reference_integral(f, JacobiParams::constant(1, 0.0, 0.0), 200) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // arcsine weight: 2 * int_0^1 x / sqrt(1 - x^2) dx = 2
  CHECK(reference_integral(f, JacobiParams::constant(1, -0.5, -0.5), 200) ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("heaviside values and truths") {
  const Integrand f = heaviside_centered();
  const double pos[] = {0.3};
  const double neg[] = {-0.3};
  CHECK(f(pos) == 1.0);
  CHECK(f(neg) == -1.0);
  CHECK(reference_integral(f, JacobiParams::constant(1, 0.0, 0.0), 200) ==
        doctest::Approx(0.0));
  // a=0, b=-1/2: right mass 2(sqrt(2)-1), left mass 2; difference 2sqrt(2)-4
  CHECK(reference_integral(f, JacobiParams({0.0}, {-0.5}), 200) ==
        doctest::Approx(2.0 * std::sqrt(2.0) - 4.0).epsilon(1e-12));
}

TEST_CASE("cosine values and truth") {
  const Integrand f = cosine_prod();
  const double zero[] = {0.0};
  const double half[] = {0.5};
  CHECK(f(zero) == doctest::Approx(1.0));
  CHECK(f(half) == doctest::Approx(0.0));
  CHECK(reference_integral(f, JacobiParams::constant(1, 0.0, 0.0), 200) ==
        doctest::Approx(0.0));
}

TEST_CASE("mix factor zeros and flat-weight truth") {
  const Integrand f = mix();
  const double neg[] = {-0.5};
  CHECK(f(neg) == 0.0);
  const double half[] = {0.5};
  CHECK(f(half) == doctest::Approx(0.0).epsilon(1e-14));
  // int_0^1 cos(pi x) + cos(2 pi x) + sin(5 pi x) dx = 2/(5 pi)
  CHECK(reference_integral(f, JacobiParams::constant(1, 0.0, 0.0), 200) ==
        doctest::Approx(2.0 / (5.0 * M_PI)).epsilon(1e-12));
  const double t200 = reference_integral(f, JacobiParams({0.1}, {-0.4}), 200);
  const double t400 = reference_integral(f, JacobiParams({0.1}, {-0.4}), 400);
  CHECK(t200 == doctest::Approx(t400).epsilon(1e-10));
}

TEST_CASE("separable truths multiply across dimensions") {
  for (const auto* label : {"bump", "abs", "heaviside", "cosine", "mix"}) {
    const Integrand f = integrand_by_label(label, 0.05, nullptr);
    const double t1a = reference_integral(f, JacobiParams({0.2}, {-0.3}), 240);
    const double t1b = reference_integral(f, JacobiParams({-0.5}, {0.4}), 240);
    const double t2 =
        reference_integral(f, JacobiParams({0.2, -0.5}, {-0.3, 0.4}), 240);
    CHECK(t2 == doctest::Approx(t1a * t1b).epsilon(1e-10));
  }
}

TEST_CASE("labels resolve and unknown labels are rejected") {
  CHECK(integrand_by_label("bump", 0.05, nullptr).label == "bump");
  CHECK(integrand_by_label("cosine", 0.05, nullptr).label == "cosine");
  CHECK_THROWS_AS(integrand_by_label("nope", 0.05, nullptr),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrand_by_label("eigsum", 0.05, nullptr),
                  std::invalid_argument);
}
