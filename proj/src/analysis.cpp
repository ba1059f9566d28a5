#include "shear/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace shear {

namespace {

// Least squares y = a + b u; returns (a, b, r2).
struct LineFit {
  double a = 0.0, b = 0.0, r2 = 1.0;
};

LineFit fit_line(const std::vector<double>& u, const std::vector<double>& y) {
  const std::size_t n = u.size();
  double su = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    su += u[i];
    sy += y[i];
  }
  const double mu = su / n, my = sy / n;
  double suu = 0, suy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suy += (u[i] - mu) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.b = suu > 0 ? suy / suu : 0.0;
  f.a = my - f.b * mu;
  if (syy > 0) {
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (f.a + f.b * u[i]);
      ss_res += r * r;
    }
    f.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return f;
}

}  // namespace

std::vector<double> log_spaced(double t_min, double t_max, int count) {
  if (!(t_min > 0.0) || !(t_max > t_min) || count < 2)
    throw std::invalid_argument("log_spaced: need 0 < t_min < t_max, count >= 2");
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i)
    t[i] = t_min * std::pow(t_max / t_min, double(i) / (count - 1));
  t.back() = t_max;
  return t;
}

DecayFit fit_power_law(const CovarianceSeries& series, double t_min,
                       double t_max, int block) {
  if (block < 1) throw std::invalid_argument("fit_power_law: block >= 1");
  std::vector<double> ts, env;
  double cur_max = 0.0, cur_logt = 0.0;
  int in_block = 0;
  auto flush = [&] {
    if (in_block == 0) return;
    ts.push_back(std::exp(cur_logt / in_block));
    env.push_back(cur_max);
    cur_max = 0.0;
    cur_logt = 0.0;
    in_block = 0;
  };
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t < t_min || t > t_max) continue;
    cur_max = std::max(cur_max, std::abs(series.values[i]));
    cur_logt += std::log(t);
    if (++in_block == block) flush();
  }
  flush();
  if (ts.size() < 3)
    throw std::invalid_argument("fit_power_law: too few points in window");

  DecayFit fit;
  fit.t_min = t_min;
  fit.t_max = t_max;
  if (std::all_of(env.begin(), env.end(), [](double e) { return e < 1e-14; })) {
    fit.fully_decayed = true;
    return fit;
  }
  std::vector<double> u, y;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (env[i] < 1e-14) continue;  // skip numerically dead blocks
    u.push_back(std::log(ts[i]));
    y.push_back(std::log(env[i]));
  }
  const LineFit lf = fit_line(u, y);
  fit.exponent = -lf.b;
  fit.amplitude = std::exp(lf.a);
  fit.r2 = lf.r2;
  return fit;
}

DecayFit fit_exponential(const std::vector<double>& ns,
                         const std::vector<double>& abs_values) {
  if (ns.size() != abs_values.size() || ns.size() < 3)
    throw std::invalid_argument("fit_exponential: need >= 3 matched points");
  std::vector<double> u, y;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (abs_values[i] < 1e-14) continue;
    u.push_back(ns[i]);
    y.push_back(std::log(abs_values[i]));
  }
  DecayFit fit;
  fit.t_min = ns.front();
  fit.t_max = ns.back();
  if (u.size() < 3) {
    fit.fully_decayed = true;
    return fit;
  }
  const LineFit lf = fit_line(u, y);
  fit.exponent = -lf.b;  // decay rate c in A e^{-c n}
  fit.amplitude = std::exp(lf.a);
  fit.r2 = lf.r2;
  return fit;
}

std::vector<BoundCheck> check_transvection_bound(const FourierObservable& f1,
                                                 const FourierObservable& f2,
                                                 double s, long n_min,
                                                 long n_max) {
  if (n_min < 1 || n_max < n_min)
    throw std::invalid_argument("check_transvection_bound: need 1 <= n_min <= n_max");
  const double norms = norm_H_s0(f1, s) * norm_H_s0(f2, s);
  std::vector<BoundCheck> out;
  out.reserve(n_max - n_min + 1);
  for (long n = n_min; n <= n_max; ++n) {
    const double cov = std::abs(spectral_cov_transvection(f1, f2, n));
    const double bound = std::pow(4.0, s) * std::pow(double(n), -2.0 * s) * norms;
    out.push_back({n, cov, bound, cov <= bound * (1.0 + 1e-12)});
  }
  return out;
}

DecayFit check_geodesic_rate(int n_dim, const FourierObservable& f1,
                             const FourierObservable& f2, double t_min,
                             double t_max, int time_points,
                             const QuadSpec& quad, int threads) {
  const FlowSpec flow = FlowSpec::torus_geodesic(n_dim);
  EstimatorSpec est;
  est.kind = EstimatorSpec::Kind::Spectral;
  est.quad = quad;
  const CovarianceSeries series =
      cov_series(flow, f1, f2, log_spaced(t_min, t_max, time_points), est,
                 threads);
  return fit_power_law(series, t_min, t_max, 10);
}

void append_fit_comment(const DecayFit& fit, std::ostream& os) {
  char buf[256];
  if (fit.fully_decayed) {
    os << "# fit: fully decayed\n";
    return;
  }
  std::snprintf(buf, sizeof(buf), "# fit: exponent=%.17g, amplitude=%.17g, r2=%.17g\n",
                fit.exponent, fit.amplitude, fit.r2);
  os << buf;
}

}  // namespace shear
