#include "doctest.h"
#include "shear/observables.hpp"

#include <cmath>
#include <random>

using namespace shear;

TEST_CASE("eval matches a hand-computed Fourier sum") {
  FourierObservable f(0, 2);
  f.add({1, 0}, Complex(0.5, 0.0));
  f.add({0, 1}, Complex(0.0, -1.0));
  PhasePoint p;
  p.fiber.coords = {0.25, 0.125};
  const Complex expected = 0.5 * std::polar(1.0, 2.0 * M_PI * 0.25) +
                           Complex(0.0, -1.0) * std::polar(1.0, 2.0 * M_PI * 0.125);
  CHECK(std::abs(f.eval(p) - expected) < 1e-14);
}

TEST_CASE("conditional expectation keeps exactly the zero mode and is idempotent") {
  FourierObservable f(1, 2);
  f.add({0, 0}, BaseProfile::trig(0, 1, 2.0));
  f.add({1, 1}, Complex(3.0, 0.0));
  const FourierObservable e = conditional_expectation(f);
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms().count({0, 0}) == 1);
  const FourierObservable ee = conditional_expectation(e);
  PhasePoint p;
  p.base.coords = {0.7};
  p.fiber.coords = {0.1, 0.2};
  CHECK(std::abs(e.eval(p) - ee.eval(p)) < 1e-14);
}

TEST_CASE("anisotropic weight h") {
  CHECK(aniso_weight_h({3, 4}) == doctest::Approx(1.25));
  CHECK(aniso_weight_h({7, 0}) == doctest::Approx(1.0));
  CHECK(aniso_weight_h({0, 2}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(aniso_weight_h({1, 2, 3}), std::invalid_argument);
}

TEST_CASE("H^{s,0} norm of a single mode") {
  FourierObservable f(0, 2);
  f.add({1, 2}, Complex(2.0, 0.0));
  const double h = std::sqrt(1.0 + 0.25);
  CHECK(norm_H_s0(f, 1.0) == doctest::Approx(2.0 * h));
  CHECK(norm_H_s0(f, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("Parseval on a 256x256 torus grid") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  FourierObservable f(0, 2);
  double sum_sq = 0.0;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      const Complex c(unif(rng), unif(rng));
      f.add({a, b}, c);
      sum_sq += std::norm(c);
    }
  const int G = 256;
  double grid_mean = 0.0;
  PhasePoint p;
  p.fiber.coords = {0.0, 0.0};
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) {
      p.fiber.coords[0] = double(i) / G;
      p.fiber.coords[1] = double(j) / G;
      grid_mean += std::norm(f.eval(p));
    }
  grid_mean /= double(G) * G;
  CHECK(grid_mean == doctest::Approx(sum_sq).epsilon(1e-10));
}

TEST_CASE("conjugate-symmetric coefficients give a real-valued observable") {
  FourierObservable f(0, 2);
  const Complex c(0.4, -0.7);
  f.add({2, -1}, c);
  f.add({-2, 1}, std::conj(c));
  PhasePoint p;
  p.fiber.coords = {0.3127, 0.881};
  CHECK(std::fabs(f.eval(p).imag()) < 1e-12);
}

TEST_CASE("coefficient tail bound sums the outside of the cutoff square") {
  const double tail = coefficient_tail_bound(
      [](const FrequencyVector&) { return 1.0; }, 1, 2);
  CHECK(tail == doctest::Approx(25.0 - 9.0));
}

TEST_CASE("profiles evaluate as documented") {
  const BaseProfile hat = BaseProfile::hat(0, 1.5, 0.5);
  CHECK(hat({1.5}).real() == doctest::Approx(1.0));
  CHECK(hat({2.1}).real() == doctest::Approx(0.0));
  CHECK(hat({1.75}).real() == doctest::Approx(0.5));  // smoothstep midpoint
  const BaseProfile bump = BaseProfile::gaussian_bump(0, 0.0, 2.0, 3.0);
  CHECK(bump({0.0}).real() == doctest::Approx(3.0));
  CHECK(bump({2.0}).real() == doctest::Approx(3.0 * std::exp(-0.5)));
}
