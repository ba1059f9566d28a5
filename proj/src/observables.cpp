#include "shear/observables.hpp"

#include <algorithm>
#include <cmath>

namespace shear {

bool is_zero_frequency(const FrequencyVector& xi) {
  return std::all_of(xi.begin(), xi.end(), [](int k) { return k == 0; });
}

BaseProfile BaseProfile::constant(Complex c) {
  BaseProfile p;
  p.f_ = [c](const Vec&) { return c; };
  p.is_constant_ = true;
  p.const_value_ = c;
  p.id_ = "const";
  return p;
}

BaseProfile BaseProfile::trig(int coord, int k, double amp, double phase) {
  BaseProfile p;
  p.f_ = [=](const Vec& x) {
    return Complex(amp * std::cos(k * x[coord] + phase), 0.0);
  };
  p.is_constant_ = false;
  p.id_ = "trig";
  return p;
}

BaseProfile BaseProfile::gaussian_bump(int coord, double center, double width,
                                       double amp) {
  BaseProfile p;
  p.f_ = [=](const Vec& x) {
    const double u = (x[coord] - center) / width;
    return Complex(amp * std::exp(-0.5 * u * u), 0.0);
  };
  p.is_constant_ = false;
  p.id_ = "bump";
  return p;
}

BaseProfile BaseProfile::hat(int coord, double center, double halfwidth,
                             double amp) {
  BaseProfile p;
  p.f_ = [=](const Vec& x) {
    const double u = std::fabs(x[coord] - center) / halfwidth;
    if (u >= 1.0) return Complex(0.0, 0.0);
    const double w = (1.0 - u) * (1.0 - u) * (1.0 + 2.0 * u);
    return Complex(amp * w, 0.0);
  };
  p.is_constant_ = false;
  p.id_ = "hat";
  return p;
}

BaseProfile BaseProfile::from_function(std::function<Complex(const Vec&)> f,
                                       std::string id) {
  BaseProfile p;
  p.f_ = std::move(f);
  p.is_constant_ = false;
  p.id_ = std::move(id);
  return p;
}

BaseProfile BaseProfile::grid1d(double lo, double hi,
                                std::vector<Complex> values) {
  if (values.size() < 2)
    throw std::invalid_argument("grid profile: need >= 2 samples");
  BaseProfile p;
  p.f_ = [lo, hi, values = std::move(values)](const Vec& x) {
    const int n = static_cast<int>(values.size());
    double u = (x[0] - lo) / (hi - lo) * (n - 1);
    u = std::clamp(u, 0.0, static_cast<double>(n - 1));
    const int i = std::min(static_cast<int>(u), n - 2);
    const double f = u - i;
    return values[i] * (1.0 - f) + values[i + 1] * f;
  };
  p.is_constant_ = false;
  p.id_ = "grid";
  return p;
}

FourierObservable& FourierObservable::add(FrequencyVector xi,
                                          BaseProfile profile) {
  if (static_cast<int>(xi.size()) != fiber_dim_)
    throw std::invalid_argument("observable: frequency dimension mismatch");
  terms_[std::move(xi)] = std::move(profile);
  return *this;
}

FourierObservable& FourierObservable::add(FrequencyVector xi,
                                          Complex coefficient) {
  return add(std::move(xi), BaseProfile::constant(coefficient));
}

bool FourierObservable::is_pure_torus() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.second.is_constant(); });
}

Complex FourierObservable::eval(const PhasePoint& p) const {
  if (static_cast<int>(p.base.coords.size()) != base_dim_ ||
      static_cast<int>(p.fiber.coords.size()) != fiber_dim_)
    throw std::invalid_argument("observable eval: dimension mismatch");
  Complex acc = 0.0;
  for (const auto& [xi, prof] : terms_) {
    double phase = 0.0;
    for (int k = 0; k < fiber_dim_; ++k) phase += xi[k] * p.fiber.coords[k];
    acc += prof(p.base.coords) *
           std::polar(1.0, 2.0 * M_PI * phase);
  }
  return acc;
}

FourierObservable conditional_expectation(const FourierObservable& obs) {
  FourierObservable out(obs.base_dim(), obs.fiber_dim());
  const FrequencyVector zero(obs.fiber_dim(), 0);
  auto it = obs.terms().find(zero);
  if (it != obs.terms().end()) out.add(zero, it->second);
  return out;
}

double aniso_weight_h(const FrequencyVector& xi) {
  if (xi.size() != 2)
    throw std::invalid_argument("aniso_weight_h: needs d = 2");
  if (xi[1] == 0) return 1.0;
  const double r = static_cast<double>(xi[0]) / xi[1];
  return std::sqrt(1.0 + r * r);
}

double norm_H_s0(const FourierObservable& obs, double s) {
  if (s < 0.0) throw std::invalid_argument("norm_H_s0: s must be >= 0");
  if (obs.fiber_dim() != 2)
    throw std::invalid_argument("norm_H_s0: needs a T^2 observable");
  double acc = 0.0;
  for (const auto& [xi, prof] : obs.terms()) {
    if (!prof.is_constant())
      throw std::invalid_argument("norm_H_s0: non-constant profile present");
    const double h = aniso_weight_h(xi);
    acc += std::pow(h, 2.0 * s) * std::norm(prof.constant_value());
  }
  return std::sqrt(acc);
}

double coefficient_tail_bound(
    const std::function<double(const FrequencyVector&)>& abs_coeff, int cutoff,
    int horizon) {
  double acc = 0.0;
  for (int a = -horizon; a <= horizon; ++a)
    for (int b = -horizon; b <= horizon; ++b) {
      if (std::max(std::abs(a), std::abs(b)) <= cutoff) continue;
      const double c = abs_coeff({a, b});
      acc += c * c;
    }
  return acc;
}

}  // namespace shear
