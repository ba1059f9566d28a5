#include "shear/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shear/padic.hpp"

namespace shear {

double wrap_unit(double x) {
  double y = x - std::floor(x);
  if (y >= 1.0) y = 0.0;
  return y;
}

double torus_dist(double a, double b) {
  double d = std::fabs(wrap_unit(a) - wrap_unit(b));
  return std::min(d, 1.0 - d);
}

void TorusVector::normalize() {
  for (double& c : coords) c = wrap_unit(c);
}

double Chart::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

bool Chart::contains(const Vec& x) const {
  if (x.size() != lo.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

VelocityField::VelocityField(int base_dim, int fiber_dim,
                             std::function<Vec(const Vec&)> fn, std::string id)
    : base_dim_(base_dim), fiber_dim_(fiber_dim), fn_(std::move(fn)),
      id_(std::move(id)) {}

Vec VelocityField::operator()(const Vec& x) const {
  if (static_cast<int>(x.size()) != base_dim_)
    throw std::invalid_argument("velocity field: base dimension mismatch");
  return fn_(x);
}

VelocityField VelocityField::constant(int base_dim, Vec value) {
  int d = static_cast<int>(value.size());
  return VelocityField(base_dim, d,
                       [value](const Vec&) { return value; }, "constant");
}

Vec billiard_chart_velocity(double theta) {
  if (!(std::fabs(theta) < M_PI / 2))
    throw std::invalid_argument("billiard chart: |theta| must be < pi/2");
  const double c = 2.0 * std::cos(theta);
  return {c, c * (0.5 - theta / M_PI)};
}

VelocityField VelocityField::disk_billiard() {
  return VelocityField(1, 2,
                       [](const Vec& x) { return billiard_chart_velocity(x[0]); },
                       "disk-billiard");
}

VelocityField VelocityField::torus_direction(int n) {
  if (n == 2) {
    return VelocityField(1, 2,
                         [](const Vec& x) -> Vec {
                           return {std::cos(x[0]), std::sin(x[0])};
                         },
                         "direction-s1");
  }
  if (n == 3) {
    return VelocityField(2, 3,
                         [](const Vec& x) -> Vec {
                           const double sp = std::sin(x[0]);
                           return {sp * std::cos(x[1]), sp * std::sin(x[1]),
                                   std::cos(x[0])};
                         },
                         "direction-s2");
  }
  throw std::invalid_argument("torus_direction: n must be 2 or 3");
}

VelocityField VelocityField::grid(const Chart& chart, std::vector<int> shape,
                                  int fiber_dim, std::vector<Vec> values) {
  const int n = chart.dim();
  if (static_cast<int>(shape.size()) != n)
    throw std::invalid_argument("grid field: shape/chart mismatch");
  std::size_t total = 1;
  for (int s : shape) {
    if (s < 2) throw std::invalid_argument("grid field: need >= 2 nodes/axis");
    total *= static_cast<std::size_t>(s);
  }
  if (values.size() != total)
    throw std::invalid_argument("grid field: value count mismatch");
  Chart ch = chart;
  auto fn = [ch, shape, fiber_dim, values = std::move(values),
             n](const Vec& x) -> Vec {
    // Multilinear interpolation, clamped to the chart.
    std::vector<int> i0(n);
    Vec frac(n);
    for (int a = 0; a < n; ++a) {
      double u = (x[a] - ch.lo[a]) / (ch.hi[a] - ch.lo[a]) * (shape[a] - 1);
      u = std::clamp(u, 0.0, static_cast<double>(shape[a] - 1));
      i0[a] = std::min(static_cast<int>(u), shape[a] - 2);
      frac[a] = u - i0[a];
    }
    Vec out(fiber_dim, 0.0);
    const int corners = 1 << n;
    for (int c = 0; c < corners; ++c) {
      double w = 1.0;
      std::size_t idx = 0;
      for (int a = 0; a < n; ++a) {
        const int bit = (c >> a) & 1;
        w *= bit ? frac[a] : 1.0 - frac[a];
        idx = idx * shape[a] + (i0[a] + bit);
      }
      for (int k = 0; k < fiber_dim; ++k) out[k] += w * values[idx][k];
    }
    return out;
  };
  return VelocityField(n, fiber_dim, std::move(fn), "grid");
}

BaseMapSpec BaseMapSpec::rotation(double alpha) {
  // Reject alpha that is exactly rational with denominator <= 1e6
  // (continued-fraction expansion terminates there).
  double x = alpha - std::floor(alpha);
  long long q_prev = 0, q_cur = 1;
  double r = x;
  while (q_cur <= 1000000) {
    if (r < 1e-9)  // residual numerically zero: expansion terminated
      throw std::invalid_argument("rotation: alpha is rational");
    r = 1.0 / r;
    double a = std::floor(r);
    long long q_next = static_cast<long long>(a) * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
    r -= a;
  }
  return {Kind::IrrationalRotation, alpha};
}

double BaseMapSpec::apply(double x) const {
  switch (kind) {
    case Kind::Doubling:
      return wrap_unit(2.0 * x);
    case Kind::IrrationalRotation:
      return wrap_unit(x + alpha);
  }
  return x;
}

double BaseMapSpec::apply_n(double x, long n) const {
  if (kind == Kind::IrrationalRotation) return wrap_unit(x + n * alpha);
  for (long i = 0; i < n; ++i) x = apply(x);
  return x;
}

FlowSpec::FlowSpec(Variant v, std::string id)
    : spec_(std::move(v)), id_(std::move(id)) {}

FlowSpec FlowSpec::product(ProductFlow pf, std::string id) {
  return FlowSpec(std::move(pf), std::move(id));
}

FlowSpec FlowSpec::transvection(TransvectionVariant variant) {
  return FlowSpec(Transvection{variant},
                  variant == TransvectionVariant::Lower ? "transvection-lower"
                                                        : "transvection-upper");
}

FlowSpec FlowSpec::torus_geodesic(int n) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("torus_geodesic: n must be 2 or 3");
  return FlowSpec(TorusGeodesic{n}, "torus-geodesic-" + std::to_string(n));
}

FlowSpec FlowSpec::disk_billiard() {
  return FlowSpec(DiskBilliard{}, "disk-billiard");
}

FlowSpec FlowSpec::sphere_geodesic() {
  return FlowSpec(SphereGeodesic{}, "sphere-geodesic");
}

FlowSpec FlowSpec::suspension(BaseMapSpec base_map, Chart m_chart,
                              VelocityField speed, DensityFn m_density) {
  return FlowSpec(Suspension{base_map, std::move(m_chart), std::move(speed),
                             std::move(m_density)},
                  "suspension");
}

FlowSpec FlowSpec::padic(int p, int digits, std::vector<int> v_digits) {
  if (p < 2) throw std::invalid_argument("padic: p must be >= 2");
  if (static_cast<int>(v_digits.size()) != digits)
    throw std::invalid_argument("padic: v digit count mismatch");
  for (int d : v_digits)
    if (d < 0 || d >= p) throw std::invalid_argument("padic: digit range");
  return FlowSpec(PAdicTranslationSpec{p, digits, std::move(v_digits)},
                  "padic-" + std::to_string(p));
}

int FlowSpec::base_dim() const {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProductFlow>) return s.chart.dim();
        else if constexpr (std::is_same_v<T, Transvection>) return 0;
        else if constexpr (std::is_same_v<T, TorusGeodesic>)
          return s.dim == 2 ? 1 : 2;
        else if constexpr (std::is_same_v<T, DiskBilliard>) return 1;
        else if constexpr (std::is_same_v<T, SphereGeodesic>) return 6;
        else if constexpr (std::is_same_v<T, Suspension>)
          return s.m_chart.dim();
        else return 1;  // PAdic: M placeholder coordinate
      },
      spec_);
}

int FlowSpec::fiber_dim() const {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProductFlow>)
          return s.velocity.fiber_dim();
        else if constexpr (std::is_same_v<T, Transvection>) return 2;
        else if constexpr (std::is_same_v<T, TorusGeodesic>) return s.dim;
        else if constexpr (std::is_same_v<T, DiskBilliard>) return 2;
        else if constexpr (std::is_same_v<T, SphereGeodesic>) return 1;
        else if constexpr (std::is_same_v<T, Suspension>) return 2;
        else return s.digits;  // PAdic digits, stored as digit/p
      },
      spec_);
}

bool FlowSpec::is_map() const {
  return std::holds_alternative<Transvection>(spec_) ||
         std::holds_alternative<PAdicTranslationSpec>(spec_);
}

bool FlowSpec::is_semiflow() const {
  return std::holds_alternative<Suspension>(spec_);
}

std::optional<ProductFlow> FlowSpec::product_view() const {
  if (const auto* pf = std::get_if<ProductFlow>(&spec_)) return *pf;
  if (const auto* tg = std::get_if<TorusGeodesic>(&spec_)) {
    ProductFlow pf;
    if (tg->dim == 2) {
      pf.chart = {{0.0}, {2.0 * M_PI}};
      pf.geometry = ChartGeometry::Circle;
      pf.velocity = VelocityField::torus_direction(2);
      pf.base_density = [](const Vec&) { return 1.0 / (2.0 * M_PI); };
    } else {
      pf.chart = {{0.0, 0.0}, {M_PI, 2.0 * M_PI}};
      pf.geometry = ChartGeometry::Sphere2;
      pf.velocity = VelocityField::torus_direction(3);
      pf.base_density = [](const Vec& x) {
        return std::sin(x[0]) / (4.0 * M_PI);
      };
    }
    return pf;
  }
  if (std::holds_alternative<DiskBilliard>(spec_)) {
    ProductFlow pf;
    pf.chart = {{-M_PI / 2}, {M_PI / 2}};
    pf.geometry = ChartGeometry::Interval;
    pf.velocity = VelocityField::disk_billiard();
    pf.base_density = [](const Vec& x) { return std::cos(x[0]) / 2.0; };
    return pf;
  }
  return std::nullopt;
}

namespace {

void check_dims(const FlowSpec& flow, const PhasePoint& p) {
  if (static_cast<int>(p.base.coords.size()) != flow.base_dim() ||
      static_cast<int>(p.fiber.coords.size()) != flow.fiber_dim())
    throw std::invalid_argument("evolve: phase point dimension mismatch");
}

long integer_time(double t) {
  const double r = std::round(t);
  if (std::fabs(t - r) > 1e-9)
    throw std::invalid_argument("evolve: map requires integer time");
  return static_cast<long>(r);
}

PAdicInteger padic_from_fiber(int p, const Vec& coords) {
  PAdicInteger y = PAdicInteger::zero(p, static_cast<int>(coords.size()));
  for (std::size_t j = 0; j < coords.size(); ++j)
    y.digits[j] = static_cast<int>(std::lround(coords[j] * p));
  return y;
}

Vec padic_to_fiber(const PAdicInteger& y) {
  Vec coords(y.digits.size());
  for (std::size_t j = 0; j < coords.size(); ++j)
    coords[j] = static_cast<double>(y.digits[j]) / y.p;
  return coords;
}

}  // namespace

std::pair<double, double> suspension_evolve(const BaseMapSpec& base,
                                            double speed,
                                            std::pair<double, double> state,
                                            double t) {
  if (t < 0.0) throw std::invalid_argument("suspension: t must be >= 0");
  if (speed <= 0.0) throw std::invalid_argument("suspension: speed must be > 0");
  const double total = state.second + speed * t;
  const long k = static_cast<long>(std::floor(total));
  return {base.apply_n(state.first, k), total - k};
}

PhasePoint evolve(const FlowSpec& flow, const PhasePoint& p, double t) {
  check_dims(flow, p);
  if (!std::isfinite(t)) throw std::invalid_argument("evolve: t not finite");
  PhasePoint q = p;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProductFlow> ||
                      std::is_same_v<T, TorusGeodesic> ||
                      std::is_same_v<T, DiskBilliard>) {
          const ProductFlow pf = *flow.product_view();
          const Vec v = pf.velocity(p.base.coords);
          for (std::size_t i = 0; i < q.fiber.coords.size(); ++i)
            q.fiber.coords[i] = wrap_unit(p.fiber.coords[i] + t * v[i]);
        } else if constexpr (std::is_same_v<T, Transvection>) {
          const long n = integer_time(t);
          // Lower (1,0;1,1): (x,y) -> (x, y+nx). Upper: (x,y) -> (x+ny, y).
          if (s.variant == TransvectionVariant::Lower)
            q.fiber.coords[1] =
                wrap_unit(p.fiber.coords[1] + n * p.fiber.coords[0]);
          else
            q.fiber.coords[0] =
                wrap_unit(p.fiber.coords[0] + n * p.fiber.coords[1]);
        } else if constexpr (std::is_same_v<T, SphereGeodesic>) {
          q.fiber.coords[0] = wrap_unit(p.fiber.coords[0] + t / (2.0 * M_PI));
        } else if constexpr (std::is_same_v<T, Suspension>) {
          const double speed = s.speed(p.base.coords)[0];
          auto st = suspension_evolve(
              s.base_map, speed, {p.fiber.coords[0], p.fiber.coords[1]}, t);
          q.fiber.coords[0] = st.first;
          q.fiber.coords[1] = st.second;
        } else if constexpr (std::is_same_v<T, PAdicTranslationSpec>) {
          const long n = integer_time(t);
          PAdicInteger v{s.p, s.v_digits};
          PAdicInteger y = padic_from_fiber(s.p, p.fiber.coords);
          y = padic_add(y, padic_scale(v, n));
          q.fiber.coords = padic_to_fiber(y);
        }
      },
      flow.spec());
  return q;
}

namespace {

// Sup of the density on a coarse grid, padded for rejection sampling.
double density_bound(const Chart& chart, const DensityFn& density) {
  const int n = chart.dim();
  double sup = 0.0;
  const int g = 64;
  Vec x(n);
  const long total = static_cast<long>(std::pow(g, n));
  for (long c = 0; c < total; ++c) {
    long rem = c;
    for (int a = 0; a < n; ++a) {
      const int i = rem % g;
      rem /= g;
      x[a] = chart.lo[a] + (i + 0.5) / g * (chart.hi[a] - chart.lo[a]);
    }
    sup = std::max(sup, density(x));
  }
  return sup * 1.5 + 1e-12;
}

Vec sample_density(const Chart& chart, const DensityFn& density, double bound,
                   std::mt19937_64& rng) {
  const int n = chart.dim();
  Vec x(n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int tries = 0; tries < 100000; ++tries) {
    for (int a = 0; a < n; ++a)
      x[a] = chart.lo[a] + unif(rng) * (chart.hi[a] - chart.lo[a]);
    const double d = density(x);
    if (d < 0.0)
      throw std::invalid_argument("base density is negative on the chart");
    if (unif(rng) * bound <= d) return x;
  }
  throw std::invalid_argument("base density rejection sampling failed");
}

double density_integral(const Chart& chart, ChartGeometry geom,
                        const DensityFn& density) {
  if (chart.dim() == 1) {
    auto f = [&](double x) { return density({x}); };
    if (geom == ChartGeometry::Circle)
      return integrate_periodic(
                 [&](double x) { return Complex(f(x), 0.0); },
                 chart.hi[0] - chart.lo[0], 512)
          .real();
    return integrate_interval_real(f, chart.lo[0], chart.hi[0], 64);
  }
  if (chart.dim() == 2 && geom == ChartGeometry::Sphere2) {
    return integrate_sphere_chart(
               [&](double phi, double lam) {
                 return Complex(density({phi, lam}), 0.0);
               },
               64, 128)
        .real();
  }
  // Generic rectangle: tensor GL16 composite, 2D.
  if (chart.dim() == 2) {
    auto inner = [&](double x0) {
      return integrate_interval_real(
          [&](double x1) { return density({x0, x1}); }, chart.lo[1],
          chart.hi[1], 32);
    };
    return integrate_interval_real(inner, chart.lo[0], chart.hi[0], 32);
  }
  throw std::invalid_argument("density check: unsupported chart dimension");
}

}  // namespace

void validate_flow(const FlowSpec& flow) {
  if (auto pv = flow.product_view()) {
    const double mass = density_integral(pv->chart, pv->geometry,
                                         pv->base_density);
    if (std::fabs(mass - 1.0) > 1e-6)
      throw std::invalid_argument(
          "base density does not integrate to 1 (got " + std::to_string(mass) +
          ")");
  } else if (const auto* su = std::get_if<Suspension>(&flow.spec())) {
    const double mass = density_integral(su->m_chart, ChartGeometry::Interval,
                                         su->m_density);
    if (std::fabs(mass - 1.0) > 1e-6)
      throw std::invalid_argument("suspension base density not normalized");
  }
}

std::vector<PhasePoint> sample_invariant(const FlowSpec& flow, int count,
                                         std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_invariant: count >= 1");
  validate_flow(flow);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<PhasePoint> out;
  out.reserve(count);
  const int d = flow.fiber_dim();

  double bound = 0.0;
  if (const auto* pf = std::get_if<ProductFlow>(&flow.spec()))
    bound = density_bound(pf->chart, pf->base_density);
  else if (const auto* su = std::get_if<Suspension>(&flow.spec()))
    bound = density_bound(su->m_chart, su->m_density);

  for (int i = 0; i < count; ++i) {
    PhasePoint p;
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Transvection>) {
            p.fiber.coords = {unif(rng), unif(rng)};
          } else if constexpr (std::is_same_v<T, TorusGeodesic>) {
            if (s.dim == 2) {
              p.base.coords = {2.0 * M_PI * unif(rng)};
            } else {
              // cos(phi) uniform on [-1,1], longitude uniform.
              p.base.coords = {std::acos(1.0 - 2.0 * unif(rng)),
                               2.0 * M_PI * unif(rng)};
            }
            p.fiber.coords.resize(d);
            for (int k = 0; k < d; ++k) p.fiber.coords[k] = unif(rng);
          } else if constexpr (std::is_same_v<T, DiskBilliard>) {
            // Inverse CDF of cos(theta)/2 on (-pi/2, pi/2).
            p.base.coords = {std::asin(2.0 * unif(rng) - 1.0)};
            p.fiber.coords = {unif(rng), unif(rng)};
          } else if constexpr (std::is_same_v<T, SphereGeodesic>) {
            Vec e1(3), u(3);
            for (int k = 0; k < 3; ++k) e1[k] = gauss(rng);
            for (int k = 0; k < 3; ++k) u[k] = gauss(rng);
            double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] +
                                  e1[2] * e1[2]);
            for (int k = 0; k < 3; ++k) e1[k] /= n1;
            double dot = u[0] * e1[0] + u[1] * e1[1] + u[2] * e1[2];
            for (int k = 0; k < 3; ++k) u[k] -= dot * e1[k];
            double n2 = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
            for (int k = 0; k < 3; ++k) u[k] /= n2;
            p.base.coords = {e1[0], e1[1], e1[2], u[0], u[1], u[2]};
            p.fiber.coords = {unif(rng)};
          } else if constexpr (std::is_same_v<T, Suspension>) {
            p.base.coords = sample_density(s.m_chart, s.m_density, bound, rng);
            p.fiber.coords = {unif(rng), unif(rng)};
          } else if constexpr (std::is_same_v<T, PAdicTranslationSpec>) {
            p.base.coords = {unif(rng)};
            p.fiber.coords.resize(s.digits);
            std::uniform_int_distribution<int> digit(0, s.p - 1);
            for (int k = 0; k < s.digits; ++k)
              p.fiber.coords[k] = static_cast<double>(digit(rng)) / s.p;
          } else {  // ProductFlow
            p.base.coords = sample_density(s.chart, s.base_density, bound, rng);
            p.fiber.coords.resize(d);
            for (int k = 0; k < d; ++k) p.fiber.coords[k] = unif(rng);
          }
        },
        flow.spec());
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace shear
