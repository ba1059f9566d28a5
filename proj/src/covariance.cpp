#include "shear/covariance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

namespace shear {

namespace {

const Transvection* as_transvection(const FlowSpec& flow) {
  return std::get_if<Transvection>(&flow.spec());
}

FrequencyVector transvection_pullback(const FrequencyVector& xi, long n,
                                      TransvectionVariant variant) {
  if (variant == TransvectionVariant::Lower)
    return {static_cast<int>(xi[0] + n * xi[1]), xi[1]};
  return {xi[0], static_cast<int>(xi[1] + n * xi[0])};
}

bool transvection_invariant_mode(const FrequencyVector& xi,
                                 TransvectionVariant variant) {
  return variant == TransvectionVariant::Lower ? xi[1] == 0 : xi[0] == 0;
}

double field_sup_norm(const ProductFlow& pf) {
  // Coarse scan; registry fields are smooth and bounded.
  const int g = 128;
  double sup = 0.0;
  const int n = pf.chart.dim();
  Vec x(n);
  const long total = n == 1 ? g : g * g;
  for (long c = 0; c < total; ++c) {
    long rem = c;
    for (int a = 0; a < n; ++a) {
      const int i = rem % g;
      rem /= g;
      x[a] = pf.chart.lo[a] + (i + 0.5) / g * (pf.chart.hi[a] - pf.chart.lo[a]);
    }
    const Vec v = pf.velocity(x);
    double s = 0.0;
    for (double vi : v) s += vi * vi;
    sup = std::max(sup, std::sqrt(s));
  }
  return sup;
}

struct ModeIntegrand {
  const ProductFlow& pf;
  const BaseProfile& a1;
  const BaseProfile& a2;
  const FrequencyVector& xi;
  double t;

  Complex operator()(const Vec& x) const {
    const Vec v = pf.velocity(x);
    double phase = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) phase += xi[k] * v[k];
    return std::conj(a1(x)) * a2(x) * std::polar(1.0, 2.0 * M_PI * t * phase) *
           pf.base_density(x);
  }
};

Complex integrate_mode(const ProductFlow& pf, const ModeIntegrand& fn,
                       double osc_total, double osc_lambda, int base_res,
                       int level) {
  const int mult = 1 << level;  // Richardson refinement factor
  switch (pf.geometry) {
    case ChartGeometry::Circle: {
      const int m = mult * (base_res + static_cast<int>(1.15 * osc_total) + 32);
      return integrate_periodic(
          [&](double th) { return fn({pf.chart.lo[0] + th}); },
          pf.chart.hi[0] - pf.chart.lo[0], m);
    }
    case ChartGeometry::Interval: {
      const int panels =
          mult * (std::max(base_res / 16, 2) + static_cast<int>(osc_total / 6));
      return integrate_interval(
          [&](double x) { return fn({x}); }, pf.chart.lo[0], pf.chart.hi[0],
          panels);
    }
    case ChartGeometry::Sphere2: {
      const int panels =
          mult * (std::max(base_res / 16, 2) + static_cast<int>(osc_total / 6));
      const int lam =
          mult * (std::max(base_res, 16) + static_cast<int>(1.15 * osc_lambda));
      return integrate_sphere_chart(
          [&](double phi, double lmb) { return fn({phi, lmb}); }, panels, lam);
    }
  }
  return 0.0;
}

}  // namespace

Complex spectral_cov_transvection(const FourierObservable& f1,
                                  const FourierObservable& f2, long n,
                                  TransvectionVariant variant) {
  if (f1.fiber_dim() != 2 || f2.fiber_dim() != 2 || !f1.is_pure_torus() ||
      !f2.is_pure_torus())
    throw std::invalid_argument(
        "spectral_cov_transvection: needs pure T^2 observables");
  Complex acc = 0.0;
  for (const auto& [xi, prof] : f1.terms()) {
    if (transvection_invariant_mode(xi, variant)) continue;
    const auto it = f2.terms().find(transvection_pullback(xi, n, variant));
    if (it == f2.terms().end()) continue;
    acc += std::conj(prof.constant_value()) * it->second.constant_value();
  }
  return acc;
}

Complex spectral_cov_product_flow(const FlowSpec& flow,
                                  const FourierObservable& f1,
                                  const FourierObservable& f2, double t,
                                  const QuadSpec& quad) {
  const auto pv = flow.product_view();
  if (!pv)
    throw std::invalid_argument(
        "spectral_cov_product_flow: flow has no product structure");
  const ProductFlow& pf = *pv;
  const double vmax = field_sup_norm(pf);

  Complex total = 0.0;
  for (const auto& [xi, a1] : f1.terms()) {
    if (is_zero_frequency(xi)) continue;
    const auto it = f2.terms().find(xi);
    if (it == f2.terms().end()) continue;
    double xi_norm = 0.0, xi_perp = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k) xi_norm += double(xi[k]) * xi[k];
    xi_norm = std::sqrt(xi_norm);
    if (xi.size() >= 2) xi_perp = std::hypot(double(xi[0]), double(xi[1]));
    const double osc = 2.0 * M_PI * std::fabs(t) * xi_norm * vmax;
    const double osc_lam = 2.0 * M_PI * std::fabs(t) * xi_perp * vmax;

    ModeIntegrand fn{pf, a1, it->second, xi, t};
    const Complex coarse =
        integrate_mode(pf, fn, osc, osc_lam, quad.resolution, 0);
    const Complex fine =
        integrate_mode(pf, fn, osc, osc_lam, quad.resolution, 1);
    const double diff = std::abs(fine - coarse);
    const double scale = std::max(std::abs(fine), std::abs(coarse));
    if (diff > quad.tolerance * scale + 1e-12)
      throw ConvergenceError(
          "spectral_cov_product_flow: quadrature failed to converge");
    total += fine;
  }
  return total;
}

Complex invariant_pairing(const FlowSpec& flow, const FourierObservable& f1,
                          const FourierObservable& f2, const QuadSpec& quad,
                          std::uint64_t seed) {
  if (const auto* tv = as_transvection(flow)) {
    Complex acc = 0.0;
    PhasePoint empty;  // transvection has no base coordinates
    for (const auto& [xi, p1] : f1.terms()) {
      if (!transvection_invariant_mode(xi, tv->variant)) continue;
      const auto it = f2.terms().find(xi);
      if (it == f2.terms().end()) continue;
      acc += std::conj(p1(empty.base.coords)) *
             it->second(empty.base.coords);
    }
    return acc;
  }

  const FourierObservable e1 = conditional_expectation(f1);
  const FourierObservable e2 = conditional_expectation(f2);
  if (e1.terms().empty() || e2.terms().empty()) return 0.0;
  const BaseProfile& a1 = e1.terms().begin()->second;
  const BaseProfile& a2 = e2.terms().begin()->second;
  auto fn = [&](const Vec& x) { return std::conj(a1(x)) * a2(x); };

  if (auto pv = flow.product_view()) {
    const ProductFlow& pf = *pv;
    auto weighted = [&](const Vec& x) { return fn(x) * pf.base_density(x); };
    switch (pf.geometry) {
      case ChartGeometry::Circle:
        return integrate_periodic(
            [&](double th) { return weighted({pf.chart.lo[0] + th}); },
            pf.chart.hi[0] - pf.chart.lo[0], std::max(quad.resolution, 256));
      case ChartGeometry::Interval:
        return integrate_interval(
            [&](double x) { return weighted({x}); }, pf.chart.lo[0],
            pf.chart.hi[0], std::max(quad.resolution / 16, 16));
      case ChartGeometry::Sphere2:
        return integrate_sphere_chart(
            [&](double phi, double lmb) { return weighted({phi, lmb}); }, 32,
            96);
    }
  }
  if (const auto* su = std::get_if<Suspension>(&flow.spec())) {
    return integrate_interval(
        [&](double y) { return fn({y}) * su->m_density({y}); },
        su->m_chart.lo[0], su->m_chart.hi[0], std::max(quad.resolution / 16, 16));
  }
  if (std::holds_alternative<PAdicTranslationSpec>(flow.spec())) {
    return integrate_interval([&](double y) { return fn({y}); }, 0.0, 1.0, 16);
  }
  // SphereGeodesic: base points are orthonormal frames; average by sampling.
  const auto pts = sample_invariant(flow, 20000, seed ^ 0xABCDEF1234567ULL);
  Complex acc = 0.0;
  for (const auto& p : pts) acc += fn(p.base.coords);
  return acc / static_cast<double>(pts.size());
}

McEstimate mc_cov(const FlowSpec& flow, const FourierObservable& f1,
                  const FourierObservable& f2, double t, int samples,
                  std::uint64_t seed) {
  if (samples < 100)
    throw std::invalid_argument("mc_cov: need at least 100 samples");
  const auto pts = sample_invariant(flow, samples, seed);
  Complex mean = 0.0;
  std::vector<Complex> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const PhasePoint q = evolve(flow, pts[i], t);
    vals[i] = std::conj(f1.eval(pts[i])) * f2.eval(q);
    mean += vals[i];
  }
  mean /= static_cast<double>(pts.size());
  double var = 0.0;
  for (const Complex& z : vals) var += std::norm(z - mean);
  var /= static_cast<double>(pts.size() - 1);
  const double se = std::sqrt(var / pts.size());
  const Complex pairing = invariant_pairing(flow, f1, f2, {}, seed);
  return {mean - pairing, se};
}

CovarianceSeries cov_series(const FlowSpec& flow, const FourierObservable& f1,
                            const FourierObservable& f2,
                            const std::vector<double>& times,
                            const EstimatorSpec& est, int threads) {
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("cov_series: times must be sorted ascending");
  CovarianceSeries out;
  out.times = times;
  out.values.resize(times.size());
  out.stderrs.assign(times.size(), 0.0);
  out.estimator =
      est.kind == EstimatorSpec::Kind::Spectral ? "spectral" : "montecarlo";
  out.flow_id = flow.id();

  std::exception_ptr error;
  auto work = [&](std::size_t i) {
    const double t = times[i];
    if (est.kind == EstimatorSpec::Kind::Spectral) {
      if (as_transvection(flow)) {
        out.values[i] = spectral_cov_transvection(
            f1, f2, std::lround(t), as_transvection(flow)->variant);
      } else {
        out.values[i] = spectral_cov_product_flow(flow, f1, f2, t, est.quad);
      }
    } else {
      const auto r =
          mc_cov(flow, f1, f2, t, est.samples, est.seed ^ (std::uint64_t)i);
      out.values[i] = r.value;
      out.stderrs[i] = r.stderr_;
    }
  };

  if (threads <= 1 || times.size() < 2) {
    for (std::size_t i = 0; i < times.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    const int nt = std::min<std::size_t>(threads, times.size());
    for (int w = 0; w < nt; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < times.size();
             i = next.fetch_add(1)) {
          try {
            work(i);
          } catch (...) {
            std::scoped_lock lk(err_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }
  return out;
}

void write_csv(const CovarianceSeries& series, std::ostream& os) {
  os << "t,re,im,abs,stderr,estimator\n";
  char buf[512];
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                  series.times[i], series.values[i].real(),
                  series.values[i].imag(), std::abs(series.values[i]),
                  series.stderrs[i], series.estimator.c_str());
    os << buf;
  }
}

}  // namespace shear
