#include "doctest.h"
#include "shear/quadrature.hpp"

#include <cmath>

using namespace shear;

TEST_CASE("GL16 panel integrates smooth functions to machine precision") {
  const double got =
      integrate_interval_real([](double x) { return x * x * x * x * x * x * x * x; },
                              0.0, 1.0, 1);
  CHECK(got == doctest::Approx(1.0 / 9.0).epsilon(1e-14));

  const Complex osc = integrate_interval(
      [](double x) { return std::polar(1.0, 10.0 * x); }, 0.0, 1.0, 4);
  const Complex exact = (std::polar(1.0, 10.0) - 1.0) / Complex(0.0, 10.0);
  CHECK(std::abs(osc - exact) < 1e-12);
}

TEST_CASE("trapezoid rule kills nonzero Fourier modes on the circle") {
  const Complex z = integrate_periodic(
      [](double x) { return std::polar(1.0, 5.0 * x); }, 2.0 * M_PI, 64);
  CHECK(std::abs(z) < 1e-13);
  const Complex dc = integrate_periodic(
      [](double) { return Complex(1.0, 0.0); }, 2.0 * M_PI, 64);
  CHECK(dc.real() == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("sphere chart rule reproduces the solid-angle normalization") {
  // integrand carries the area density sin(phi) / (4 pi)
  const Complex mass = integrate_sphere_chart(
      [](double phi, double) {
        return Complex(std::sin(phi) / (4.0 * M_PI), 0.0);
      },
      8, 32);
  CHECK(mass.real() == doctest::Approx(1.0).epsilon(1e-12));

  // first spherical harmonic integrates to zero
  const Complex y1 = integrate_sphere_chart(
      [](double phi, double lam) {
        return Complex(std::sin(phi) * std::sin(phi) * std::cos(lam), 0.0);
      },
      8, 32);
  CHECK(std::abs(y1) < 1e-13);
}

TEST_CASE("GL16 tables are consistent") {
  const auto& w = gl16_weights();
  double sum = 0.0;
  for (double wi : w) sum += wi;
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gl16_nodes().size() == 16);
}
