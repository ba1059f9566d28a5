#include "shear/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace shear {

namespace {

std::vector<std::string> tokenize(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

FrequencyVector parse_freq(const std::string& s, int fiber_dim) {
  FrequencyVector xi;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ':')) xi.push_back(std::stoi(part));
  if (static_cast<int>(xi.size()) != fiber_dim)
    throw ConfigError("mode frequency '" + s + "': expected " +
                      std::to_string(fiber_dim) + " components");
  return xi;
}

double num(const std::vector<std::string>& toks, std::size_t i,
           std::optional<double> fallback = std::nullopt) {
  if (i >= toks.size()) {
    if (fallback) return *fallback;
    throw ConfigError("mode: missing numeric parameter");
  }
  return std::stod(toks[i]);
}

std::uint64_t resolve_seed(const Config& cfg, const RunOverrides& ov,
                           bool required) {
  if (ov.seed) return *ov.seed;
  if (cfg.has("run", "seed"))
    return static_cast<std::uint64_t>(cfg.get_long("run", "seed"));
  if (required) throw ConfigError("stochastic job: seed required");
  return 0;
}

int resolve_threads(const Config& cfg, const RunOverrides& ov) {
  auto normalize = [](long n) {
    if (n < 0) throw ConfigError("threads must be >= 0");
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<int>(n);
  };
  if (ov.threads) return normalize(*ov.threads);
  if (const char* env = std::getenv("SHEARLAB_THREADS"))
    return normalize(std::stol(env));
  return normalize(cfg.get_long_or("run", "threads", 1));
}

std::ofstream open_output(const RunOverrides& ov, const std::string& name) {
  const std::string path = ov.out_dir + "/" + name;
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open output file " + path);
  return os;
}

std::vector<double> build_times(const Config& cfg) {
  if (cfg.has("times", "times")) return cfg.get_doubles("times", "times");
  const double t0 = cfg.get_double("times", "t_min");
  const double t1 = cfg.get_double("times", "t_max");
  const int count = static_cast<int>(cfg.get_long_or("times", "count", 100));
  const std::string spacing = cfg.get_or("times", "spacing", "linear");
  if (spacing == "log") return log_spaced(t0, t1, count);
  if (spacing != "linear")
    throw ConfigError("times: spacing must be linear or log");
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i)
    t[i] = t0 + (t1 - t0) * (count > 1 ? double(i) / (count - 1) : 0.0);
  return t;
}

std::vector<double> default_deltas() {
  return {0.32, 0.16, 0.08, 0.04, 0.02, 0.01, 0.005};
}

struct NamedField {
  VelocityField field;
  Chart chart;
};

NamedField build_field(const Config& cfg) {
  const std::string kind = cfg.get("criterion", "field");
  if (kind == "disk-billiard")
    return {VelocityField::disk_billiard(), {{-M_PI / 2}, {M_PI / 2}}};
  if (kind == "torus-direction-2")
    return {VelocityField::torus_direction(2), {{0.0}, {2.0 * M_PI}}};
  if (kind == "torus-direction-3")
    return {VelocityField::torus_direction(3), {{0.0, 0.0}, {M_PI, 2.0 * M_PI}}};
  if (kind == "constant") {
    const std::vector<double> value = cfg.get_doubles("criterion", "value");
    const int base_dim =
        static_cast<int>(cfg.get_long_or("criterion", "base_dim", 2));
    return {VelocityField::constant(base_dim, value),
            {Vec(base_dim, 0.0), Vec(base_dim, 1.0)}};
  }
  if (kind == "sphere-synchronous") {
    // synchronous chart of the round-sphere flow: unit speed everywhere
    return {VelocityField::constant(2, {1.0}), {{0.0, 0.0}, {1.0, 1.0}}};
  }
  throw ConfigError("criterion: unknown field '" + kind + "'");
}

int run_covariance_job(const Config& cfg, const RunOverrides& ov,
                       std::ostream& log) {
  const FlowSpec flow = build_flow(cfg);
  const FourierObservable f1 = build_observable(cfg, "observable1", flow);
  const FourierObservable f2 = cfg.has_section("observable2")
                                   ? build_observable(cfg, "observable2", flow)
                                   : f1;
  EstimatorSpec est;
  const std::string kind = cfg.get_or("covariance", "estimator", "spectral");
  if (kind == "montecarlo") {
    est.kind = EstimatorSpec::Kind::MonteCarlo;
    est.samples = static_cast<int>(cfg.get_long_or("covariance", "samples", 10000));
    est.seed = resolve_seed(cfg, ov, true);
  } else if (kind != "spectral") {
    throw ConfigError("covariance: estimator must be spectral or montecarlo");
  }
  est.quad.resolution =
      static_cast<int>(cfg.get_long_or("covariance", "resolution", 64));

  const std::vector<double> times = build_times(cfg);
  const CovarianceSeries series =
      cov_series(flow, f1, f2, times, est, resolve_threads(cfg, ov));

  auto os = open_output(ov, cfg.get_or("output", "file", "covariance.csv"));
  write_csv(series, os);

  const std::string fit_kind = cfg.get_or("covariance", "fit", "none");
  if (fit_kind == "power") {
    const int block = static_cast<int>(cfg.get_long_or("covariance", "block", 10));
    append_fit_comment(
        fit_power_law(series, times.front(), times.back(), block), os);
  } else if (fit_kind == "exponential") {
    std::vector<double> mags(times.size());
    for (std::size_t i = 0; i < mags.size(); ++i)
      mags[i] = std::abs(series.values[i]);
    append_fit_comment(fit_exponential(times, mags), os);
  } else if (fit_kind != "none") {
    throw ConfigError("covariance: fit must be power, exponential or none");
  }
  log << "covariance: " << times.size() << " rows (" << series.estimator
      << ")\n";
  return 0;
}

int run_criterion_job(const Config& cfg, const RunOverrides& ov,
                      std::ostream& log) {
  NamedField nf = build_field(cfg);
  const int cutoff = static_cast<int>(cfg.get_long_or("criterion", "cutoff", 8));
  const int grid = static_cast<int>(cfg.get_long_or("criterion", "grid", 64));
  std::vector<double> deltas = cfg.has("criterion", "deltas")
                                   ? cfg.get_doubles("criterion", "deltas")
                                   : default_deltas();
  const CriterionReport rep =
      criterion_report(nf.field, nf.chart, cutoff, deltas, grid);
  auto os = open_output(ov, cfg.get_or("output", "file", "criterion.csv"));
  write_csv(rep, os);
  log << "criterion: verdict " << verdict_name(rep.verdict) << "\n";
  return 0;
}

int run_gauss_job(const Config& cfg, const RunOverrides& ov,
                  std::ostream& log) {
  const int n = static_cast<int>(cfg.get_long("gauss", "n"));
  const double eps = cfg.get_double("gauss", "eps");
  if (!(eps > 0.0) || eps >= 0.5)
    throw ConfigError("gauss: eps must lie in (0, 1/2)");
  std::vector<double> center(n, 0.0);
  if (cfg.has("gauss", "center")) {
    center = cfg.get_doubles("gauss", "center");
    if (static_cast<int>(center.size()) != n)
      throw ConfigError("gauss: center dimension mismatch");
  }
  std::vector<ShellQuery> queries;
  for (double r : cfg.get_doubles("gauss", "r"))
    queries.push_back({n, center, r, eps});
  auto os = open_output(ov, cfg.get_or("output", "file", "gauss.csv"));
  write_csv(queries, os);
  log << "gauss: " << queries.size() << " shells\n";
  return 0;
}

int run_padic_job(const Config& cfg, const RunOverrides& ov,
                  std::ostream& log) {
  const int p = static_cast<int>(cfg.get_long("padic", "p"));
  const int digits = static_cast<int>(cfg.get_long_or("padic", "digits", 16));
  const int level = static_cast<int>(cfg.get_long_or("padic", "level", 0));
  const int k = static_cast<int>(cfg.get_long_or("padic", "k", 1));
  const int j = static_cast<int>(cfg.get_long_or("padic", "j", 1));
  const int n_max =
      static_cast<int>(cfg.get_long_or("padic", "n_max", 3L * p));
  if (k < 1 || k >= p || j < 1 || j >= p)
    throw ConfigError("padic: need 1 <= k, j <= p-1");
  PAdicInteger v = PAdicInteger::zero(p, digits);
  v.digits[level] = k;
  const PAdicCharacterObservable obs{p, level, j};
  const std::vector<Complex> cov = padic_cov_series(v, obs, n_max);

  auto os = open_output(ov, cfg.get_or("output", "file", "padic.csv"));
  os << "t,abs_cov,tag\n";
  char buf[128];
  for (std::size_t n = 0; n < cov.size(); ++n) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,padic-p%d\n", n,
                  std::abs(cov[n]), p);
    os << buf;
  }
  log << "padic: p=" << p << ", " << cov.size() << " rows\n";
  return 0;
}

int run_sphere_check_job(const Config& cfg, const RunOverrides& ov,
                         std::ostream& log) {
  const FlowSpec flow = FlowSpec::sphere_geodesic();
  FourierObservable f1 = cfg.has_section("observable1")
                             ? build_observable(cfg, "observable1", flow)
                             : FourierObservable(6, 1).add({1}, Complex(1.0));
  FourierObservable f2 = cfg.has_section("observable2")
                             ? build_observable(cfg, "observable2", flow)
                             : f1;
  const int samples =
      static_cast<int>(cfg.get_long_or("sphere", "samples", 20000));
  const std::uint64_t seed = resolve_seed(cfg, ov, true);
  const std::vector<double> t0s = cfg.has("sphere", "t0")
                                      ? cfg.get_doubles("sphere", "t0")
                                      : std::vector<double>{1.0};
  auto os = open_output(ov, cfg.get_or("output", "file", "sphere_check.csv"));
  os << "t,abs_cov,tag\n";
  char buf[160];
  double max_diff = 0.0;
  for (std::size_t i = 0; i < t0s.size(); ++i) {
    const SphereCertificate cert = sphere_no_decay_certificate(
        f1, f2, t0s[i], samples, seed ^ (std::uint64_t)i);
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,t0\n", t0s[i],
                  std::abs(cert.cov_t0));
    os << buf;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,t0-plus-period\n",
                  t0s[i] + 2.0 * M_PI, std::abs(cert.cov_t0_plus_period));
    os << buf;
    max_diff = std::max(max_diff, cert.difference);
  }
  std::snprintf(buf, sizeof(buf), "# max_difference: %.17g\n", max_diff);
  os << buf;
  log << "sphere-check: max period difference " << max_diff << "\n";
  return 0;
}

int run_saturn_job(const Config& cfg, const RunOverrides& ov,
                   std::ostream& log) {
  const double r0 = cfg.get_double("saturn", "r0");
  const double r1 = cfg.get_double("saturn", "r1");
  const double arc = cfg.get_double_or("saturn", "arc", 0.1);
  const int particles =
      static_cast<int>(cfg.get_long_or("saturn", "particles", 100000));
  const int bins = static_cast<int>(cfg.get_long_or("saturn", "bins", 32));
  const std::vector<double> times = cfg.get_doubles("saturn", "times");
  const std::uint64_t seed = resolve_seed(cfg, ov, true);

  const SaturnReport rep =
      run_saturn(r0, r1, arc, particles, times, bins, seed);
  auto os = open_output(ov, cfg.get_or("output", "file", "saturn.csv"));
  os << "t,m1,m2,m3,m4,m5,m6,m7,m8\n";
  char buf[512];
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    const auto& m = rep.mode_mags[i];
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  rep.times[i], m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7]);
    os << buf;
  }
  log << "saturn: " << rep.times.size() << " frames\n";
  return 0;
}

int run_wavefront_job(const Config& cfg, const RunOverrides& ov,
                      std::ostream& log) {
  const int directions =
      static_cast<int>(cfg.get_long_or("wavefront", "directions", 4096));
  const WavefrontReport rep =
      run_wavefront(directions, cfg.get_doubles("wavefront", "times"));
  auto os = open_output(ov, cfg.get_or("output", "file", "wavefront.csv"));
  os << "t,discrepancy\n";
  char buf[128];
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", rep.times[i],
                  rep.discrepancy[i]);
    os << buf;
  }
  log << "wavefront: " << rep.times.size() << " frames\n";
  return 0;
}

int run_perturbation_job(const Config& cfg, const RunOverrides& ov,
                         std::ostream& log) {
  const double tau = cfg.get_double_or("perturbation", "tau", 0.25);
  const double c = cfg.get_double_or("perturbation", "value", 0.7);
  const int grid =
      static_cast<int>(cfg.get_long_or("perturbation", "grid", 48));
  const int cutoff =
      static_cast<int>(cfg.get_long_or("perturbation", "cutoff", 4));
  const Chart chart{{0.0, 0.0}, {1.0, 1.0}};
  const VelocityField flat = VelocityField::constant(2, {c});
  // v + tau * x1 * xi with a global cutoff function chi == 1
  const VelocityField tilted(
      2, 1, [=](const Vec& x) { return Vec{c + tau * x[0]}; }, "tilted");
  const Verdict before =
      criterion_report(flat, chart, cutoff, default_deltas(), grid).verdict;
  const Verdict after =
      criterion_report(tilted, chart, cutoff, default_deltas(), grid).verdict;
  auto os = open_output(ov, cfg.get_or("output", "file", "perturbation.csv"));
  os << "stage,verdict\n";
  os << "unperturbed," << verdict_name(before) << "\n";
  os << "perturbed," << verdict_name(after) << "\n";
  log << "perturbation-smoke: " << verdict_name(before) << " -> "
      << verdict_name(after) << "\n";
  return 0;
}

}  // namespace

FlowSpec build_flow(const Config& cfg) {
  const std::string type = cfg.get("flow", "type");
  if (type == "transvection") return FlowSpec::transvection();
  if (type == "transvection-upper")
    return FlowSpec::transvection(TransvectionVariant::Upper);
  if (type == "torus-geodesic-2") return FlowSpec::torus_geodesic(2);
  if (type == "torus-geodesic-3") return FlowSpec::torus_geodesic(3);
  if (type == "disk-billiard") return FlowSpec::disk_billiard();
  if (type == "sphere-geodesic") return FlowSpec::sphere_geodesic();
  if (type == "suspension-doubling" || type == "suspension-rotation") {
    const double y0 = cfg.get_double_or("flow", "y0", 1.0);
    const double y1 = cfg.get_double_or("flow", "y1", 2.0);
    if (!(y1 > y0) || !(y0 > 0.0))
      throw ConfigError("suspension: need 0 < y0 < y1");
    const BaseMapSpec base =
        type == "suspension-doubling"
            ? BaseMapSpec::doubling()
            : BaseMapSpec::rotation(cfg.get_double("flow", "alpha"));
    const Chart m_chart{{y0}, {y1}};
    // speed v(y) = y; uniform density on [y0, y1]
    VelocityField speed(1, 1, [](const Vec& y) { return Vec{y[0]}; }, "linear");
    const double inv = 1.0 / (y1 - y0);
    return FlowSpec::suspension(base, m_chart, std::move(speed),
                                [inv](const Vec&) { return inv; });
  }
  if (type == "padic") {
    const int p = static_cast<int>(cfg.get_long("flow", "p"));
    const int digits = static_cast<int>(cfg.get_long_or("flow", "digits", 16));
    std::vector<int> v(digits, 0);
    if (cfg.has("flow", "v")) {
      const auto vv = cfg.get_longs("flow", "v");
      for (std::size_t i = 0; i < vv.size() && i < v.size(); ++i)
        v[i] = static_cast<int>(vv[i]);
    } else {
      v[cfg.get_long_or("flow", "level", 0)] =
          static_cast<int>(cfg.get_long_or("flow", "k", 1));
    }
    return FlowSpec::padic(p, digits, v);
  }
  throw ConfigError("flow: unknown type '" + type + "'");
}

FourierObservable build_observable(const Config& cfg,
                                   const std::string& section,
                                   const FlowSpec& flow) {
  FourierObservable obs(flow.base_dim(), flow.fiber_dim());
  const bool billiard =
      std::holds_alternative<DiskBilliard>(flow.spec());
  const auto modes = cfg.get_all(section, "mode");
  if (modes.empty())
    throw ConfigError("observable section [" + section + "]: no modes");
  for (const auto& line : modes) {
    const auto toks = tokenize(line);
    if (toks.size() < 2)
      throw ConfigError("mode '" + line + "': expected 'freq kind params...'");
    const FrequencyVector xi = parse_freq(toks[0], flow.fiber_dim());
    const std::string& kind = toks[1];
    if (kind == "const") {
      obs.add(xi, Complex(num(toks, 2), num(toks, 3, 0.0)));
    } else if (kind == "trig") {
      obs.add(xi, BaseProfile::trig(static_cast<int>(num(toks, 2)),
                                    static_cast<int>(num(toks, 3)),
                                    num(toks, 4, 1.0), num(toks, 5, 0.0)));
    } else if (kind == "bump" || kind == "hat") {
      const int coord = static_cast<int>(num(toks, 2));
      const double center = num(toks, 3);
      const double width = num(toks, 4);
      if (billiard && std::fabs(center) >= M_PI / 2)
        throw ConfigError("billiard observable: |theta| must be < pi/2");
      obs.add(xi, kind == "bump"
                      ? BaseProfile::gaussian_bump(coord, center, width,
                                                   num(toks, 5, 1.0))
                      : BaseProfile::hat(coord, center, width,
                                         num(toks, 5, 1.0)));
    } else {
      throw ConfigError("mode '" + line + "': unknown profile kind");
    }
  }
  return obs;
}

SaturnReport run_saturn(double r0, double r1, double arc_turns, int particles,
                        const std::vector<double>& times, int radial_bins,
                        std::uint64_t seed) {
  if (!(r0 > 0.0) || r1 < r0)
    throw std::invalid_argument("saturn: need 0 < r0 <= r1");
  if (particles < 1 || radial_bins < 1)
    throw std::invalid_argument("saturn: need particles, bins >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> radius(particles), theta0(particles);
  for (int i = 0; i < particles; ++i) {
    radius[i] = r0 + (r1 - r0) * unif(rng);
    theta0[i] = arc_turns * unif(rng);  // angle in turns
  }

  SaturnReport rep;
  rep.times = times;
  for (double t : times) {
    std::array<std::vector<Complex>, 8> bin_sums;
    for (auto& b : bin_sums) b.assign(radial_bins, Complex(0.0));
    std::vector<long> bin_counts(radial_bins, 0);
    for (int i = 0; i < particles; ++i) {
      const double omega = std::pow(radius[i], -1.5);  // omega(1) = 1
      const double th = theta0[i] + t * omega / (2.0 * M_PI);
      int b = r1 > r0 ? static_cast<int>((radius[i] - r0) / (r1 - r0) *
                                         radial_bins)
                      : 0;
      b = std::min(b, radial_bins - 1);
      ++bin_counts[b];
      for (int m = 1; m <= 8; ++m)
        bin_sums[m - 1][b] += std::polar(1.0, 2.0 * M_PI * m * th);
    }
    std::array<double, 8> mags{};
    for (int m = 0; m < 8; ++m) {
      double acc = 0.0;
      for (int b = 0; b < radial_bins; ++b)
        if (bin_counts[b] > 0)
          acc += static_cast<double>(bin_counts[b]) / particles *
                 std::abs(bin_sums[m][b] / double(bin_counts[b]));
      mags[m] = acc;
    }
    rep.mode_mags.push_back(mags);
  }
  return rep;
}

double star_discrepancy_32(const std::vector<std::array<double, 2>>& pts) {
  constexpr int G = 32;
  long counts[G][G] = {};
  for (const auto& p : pts) {
    const int i = std::min(static_cast<int>(p[0] * G), G - 1);
    const int j = std::min(static_cast<int>(p[1] * G), G - 1);
    ++counts[i][j];
  }
  // prefix[i][j] = #points with x < i/G, y < j/G
  long prefix[G + 1][G + 1] = {};
  for (int i = 1; i <= G; ++i)
    for (int j = 1; j <= G; ++j)
      prefix[i][j] = counts[i - 1][j - 1] + prefix[i - 1][j] +
                     prefix[i][j - 1] - prefix[i - 1][j - 1];
  double worst = 0.0;
  const double n = static_cast<double>(pts.size());
  for (int i = 1; i <= G; ++i)
    for (int j = 1; j <= G; ++j)
      worst = std::max(worst, std::fabs(prefix[i][j] / n -
                                        (double(i) / G) * (double(j) / G)));
  return worst;
}

WavefrontReport run_wavefront(int directions,
                              const std::vector<double>& times) {
  if (directions < 1000)
    throw std::invalid_argument("wavefront: need >= 1000 directions");
  WavefrontReport rep;
  rep.times = times;
  std::vector<std::array<double, 2>> pts(directions);
  for (double t : times) {
    for (int k = 0; k < directions; ++k) {
      const double th = 2.0 * M_PI * k / directions;
      pts[k] = {wrap_unit(t * std::cos(th)), wrap_unit(t * std::sin(th))};
    }
    rep.discrepancy.push_back(star_discrepancy_32(pts));
  }
  return rep;
}

int run_job(const Config& cfg, const RunOverrides& ov, std::ostream& log) {
  try {
    const std::string tag = cfg.get("scenario", "tag");
    if (tag == "covariance") return run_covariance_job(cfg, ov, log);
    if (tag == "criterion") return run_criterion_job(cfg, ov, log);
    if (tag == "gauss") return run_gauss_job(cfg, ov, log);
    if (tag == "padic") return run_padic_job(cfg, ov, log);
    if (tag == "sphere-check") return run_sphere_check_job(cfg, ov, log);
    if (tag == "saturn") return run_saturn_job(cfg, ov, log);
    if (tag == "torus-wavefront") return run_wavefront_job(cfg, ov, log);
    if (tag == "perturbation-smoke") return run_perturbation_job(cfg, ov, log);
    throw ConfigError("unknown scenario tag '" + tag + "'");
  } catch (const ConvergenceError& e) {
    log << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    log << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    log << "validation error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace shear
