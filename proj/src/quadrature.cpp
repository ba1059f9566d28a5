#include "shear/quadrature.hpp"

#include <array>
#include <cmath>

namespace shear {

namespace {

// Abscissae/weights for 16-point Gauss-Legendre, positive half.
constexpr std::array<double, 8> kGl16X = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGl16W = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

std::vector<double> make_nodes() {
  std::vector<double> x(16);
  for (int i = 0; i < 8; ++i) {
    x[i] = -kGl16X[7 - i];
    x[8 + i] = kGl16X[i];
  }
  return x;
}

std::vector<double> make_weights() {
  std::vector<double> w(16);
  for (int i = 0; i < 8; ++i) {
    w[i] = kGl16W[7 - i];
    w[8 + i] = kGl16W[i];
  }
  return w;
}

}  // namespace

const std::vector<double>& gl16_nodes() {
  static const std::vector<double> x = make_nodes();
  return x;
}

const std::vector<double>& gl16_weights() {
  static const std::vector<double> w = make_weights();
  return w;
}

Complex integrate_interval(const std::function<Complex(double)>& f, double a,
                           double b, int panels) {
  if (panels < 1) panels = 1;
  const auto& xs = gl16_nodes();
  const auto& ws = gl16_weights();
  const double h = (b - a) / panels;
  Complex total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    Complex acc = 0.0;
    for (int i = 0; i < 16; ++i) acc += ws[i] * f(mid + 0.5 * h * xs[i]);
    total += acc * (0.5 * h);
  }
  return total;
}

double integrate_interval_real(const std::function<double(double)>& f, double a,
                               double b, int panels) {
  return integrate_interval([&](double x) { return Complex(f(x), 0.0); }, a, b,
                            panels)
      .real();
}

Complex integrate_periodic(const std::function<Complex(double)>& f,
                           double period, int n) {
  if (n < 4) n = 4;
  Complex acc = 0.0;
  const double h = period / n;
  for (int i = 0; i < n; ++i) acc += f(i * h);
  return acc * h;
}

Complex integrate_sphere_chart(const std::function<Complex(double, double)>& f,
                               int phi_panels, int lambda_nodes) {
  if (lambda_nodes < 4) lambda_nodes = 4;
  const double two_pi = 2.0 * M_PI;
  const double hl = two_pi / lambda_nodes;
  const auto& xs = gl16_nodes();
  const auto& ws = gl16_weights();
  if (phi_panels < 1) phi_panels = 1;
  const double hp = M_PI / phi_panels;
  Complex total = 0.0;
  for (int p = 0; p < phi_panels; ++p) {
    const double mid = (p + 0.5) * hp;
    for (int i = 0; i < 16; ++i) {
      const double phi = mid + 0.5 * hp * xs[i];
      Complex row = 0.0;
      for (int j = 0; j < lambda_nodes; ++j) row += f(phi, j * hl);
      total += ws[i] * (0.5 * hp) * row * hl;
    }
  }
  return total;
}

}  // namespace shear
