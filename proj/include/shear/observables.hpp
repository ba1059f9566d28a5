#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "shear/flows.hpp"

namespace shear {

using FrequencyVector = std::vector<int>;

bool is_zero_frequency(const FrequencyVector& xi);

/// Coefficient function a_xi on the base chart.
class BaseProfile {
 public:
  BaseProfile()
      : f_([](const Vec&) { return Complex(0.0); }),
        is_constant_(true),
        id_("const") {}

  static BaseProfile constant(Complex c);
  /// cos/sin polynomial in one chart coordinate: amp * cos(k x + phase).
  static BaseProfile trig(int coord, int k, double amp, double phase = 0.0);
  /// amp * exp(-(x[coord]-center)^2 / (2 width^2)).
  static BaseProfile gaussian_bump(int coord, double center, double width,
                                   double amp = 1.0);
  /// C^1 hat: amp * max(0, 1 - |x[coord]-center|/halfwidth)^2
  ///          * (1 + 2|x[coord]-center|/halfwidth)  (smoothstep-style).
  static BaseProfile hat(int coord, double center, double halfwidth,
                         double amp = 1.0);
  static BaseProfile from_function(std::function<Complex(const Vec&)> f,
                                   std::string id = "custom");
  /// Multilinear interpolant of complex samples on a uniform 1D grid.
  static BaseProfile grid1d(double lo, double hi, std::vector<Complex> values);

  Complex operator()(const Vec& x) const { return f_(x); }
  bool is_constant() const { return is_constant_; }
  Complex constant_value() const { return const_value_; }
  const std::string& id() const { return id_; }

 private:
  std::function<Complex(const Vec&)> f_;
  bool is_constant_ = false;
  Complex const_value_ = 0.0;
  std::string id_;
};

/// Finite fiber-Fourier sum  sum_xi a_xi(x) e^{2 pi i <xi, y>}.
class FourierObservable {
 public:
  FourierObservable(int base_dim, int fiber_dim)
      : base_dim_(base_dim), fiber_dim_(fiber_dim) {}

  FourierObservable& add(FrequencyVector xi, BaseProfile profile);
  FourierObservable& add(FrequencyVector xi, Complex coefficient);

  int base_dim() const { return base_dim_; }
  int fiber_dim() const { return fiber_dim_; }
  const std::map<FrequencyVector, BaseProfile>& terms() const {
    return terms_;
  }
  /// true when every profile is constant (pure torus observable).
  bool is_pure_torus() const;

  Complex eval(const PhasePoint& p) const;

 private:
  int base_dim_, fiber_dim_;
  std::map<FrequencyVector, BaseProfile> terms_;
};

/// Projection onto the invariant sigma-algebra: keeps only the xi = 0 term.
FourierObservable conditional_expectation(const FourierObservable& obs);

/// Anisotropic weight h(xi) = sqrt(1 + xi1^2/xi2^2) (1 when xi2 = 0), d = 2.
double aniso_weight_h(const FrequencyVector& xi);

/// H^{s,0} norm of a pure-T^2 observable.
double norm_H_s0(const FourierObservable& obs, double s);

/// Tail mass sum_{|xi|_inf > cutoff} |c(xi)|^2 for a coefficient law.
double coefficient_tail_bound(
    const std::function<double(const FrequencyVector&)>& abs_coeff, int cutoff,
    int horizon);

}  // namespace shear
