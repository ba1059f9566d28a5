#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace shear {

using Complex = std::complex<double>;
using Vec = std::vector<double>;

/// Thrown when an N vs 2N refinement comparison exceeds tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 16-point Gauss-Legendre nodes/weights on [-1,1].
const std::vector<double>& gl16_nodes();
const std::vector<double>& gl16_weights();

/// Composite 16-point Gauss-Legendre over [a,b] with `panels` panels.
Complex integrate_interval(const std::function<Complex(double)>& f, double a,
                           double b, int panels);
double integrate_interval_real(const std::function<double(double)>& f, double a,
                               double b, int panels);

/// Trapezoid rule for a periodic integrand on [0, period) with n nodes.
Complex integrate_periodic(const std::function<Complex(double)>& f,
                           double period, int n);

/// Product rule on [0,pi] x [0,2pi): composite GL in colatitude, trapezoid in
/// longitude. The integrand receives (phi, lambda) and must include the area
/// density.
Complex integrate_sphere_chart(const std::function<Complex(double, double)>& f,
                               int phi_panels, int lambda_nodes);

}  // namespace shear
