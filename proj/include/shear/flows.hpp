#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "shear/quadrature.hpp"

namespace shear {

/// Wraps a real into [0,1).
double wrap_unit(double x);
/// Distance on R/Z.
double torus_dist(double a, double b);

struct TorusVector {
  Vec coords;  // each in [0,1)
  void normalize();
};

struct BaseChartPoint {
  Vec coords;
};

struct PhasePoint {
  BaseChartPoint base;
  TorusVector fiber;
};

/// Rectangular chart domain on the base manifold.
struct Chart {
  Vec lo, hi;
  double volume() const;
  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& x) const;
};

/// Geometry tag selecting the quadrature scheme for base integrals.
enum class ChartGeometry { Interval, Circle, Sphere2 };

/// Velocity field v : chart -> R^d (fiber translation speed).
class VelocityField {
 public:
  VelocityField() = default;
  VelocityField(int base_dim, int fiber_dim,
                std::function<Vec(const Vec&)> fn, std::string id = "custom");

  /// Constant field.
  static VelocityField constant(int base_dim, Vec value);
  /// v(theta) = 2 cos(theta) (1, 1/2 - theta/pi), the disk billiard chart.
  static VelocityField disk_billiard();
  /// Unit direction field on S_{n-1} in its angle chart (n = 2 or 3).
  static VelocityField torus_direction(int n);
  /// Multilinear interpolant of samples on a uniform grid over `chart`.
  /// values has shape prod(shape) x fiber_dim, row-major over the grid.
  static VelocityField grid(const Chart& chart, std::vector<int> shape,
                            int fiber_dim, std::vector<Vec> values);

  Vec operator()(const Vec& x) const;
  int base_dim() const { return base_dim_; }
  int fiber_dim() const { return fiber_dim_; }
  const std::string& id() const { return id_; }

 private:
  int base_dim_ = 0, fiber_dim_ = 0;
  std::function<Vec(const Vec&)> fn_;
  std::string id_;
};

/// v(theta) = (2 cos(theta), 2 cos(theta) (1/2 - theta/pi)).
Vec billiard_chart_velocity(double theta);

enum class TransvectionVariant { Lower, Upper };

struct BaseMapSpec {
  enum class Kind { Doubling, IrrationalRotation };
  Kind kind = Kind::Doubling;
  double alpha = 0.0;  // rotation angle, for IrrationalRotation

  static BaseMapSpec doubling() { return {Kind::Doubling, 0.0}; }
  static BaseMapSpec rotation(double alpha);
  /// One application of the base map on [0,1).
  double apply(double x) const;
  double apply_n(double x, long n) const;
};

using DensityFn = std::function<double(const Vec&)>;

struct ProductFlow {
  Chart chart;
  ChartGeometry geometry = ChartGeometry::Interval;
  VelocityField velocity;
  DensityFn base_density;  // w.r.t. Lebesgue on the chart, integrates to 1
};

struct Transvection {
  TransvectionVariant variant = TransvectionVariant::Lower;
};

struct TorusGeodesic {
  int dim = 2;  // 2 or 3
};

struct DiskBilliard {};

struct SphereGeodesic {};

struct Suspension {
  BaseMapSpec base_map;
  Chart m_chart;           // chart of M (speed parameter space)
  VelocityField speed;     // M -> R_+^*
  DensityFn m_density;     // normalized on m_chart
};

struct PAdicTranslationSpec {
  int p = 2;
  int digits = 16;
  std::vector<int> v_digits;  // translation, base-p digits, length == digits
};

class FlowSpec {
 public:
  using Variant = std::variant<ProductFlow, Transvection, TorusGeodesic,
                               DiskBilliard, SphereGeodesic, Suspension,
                               PAdicTranslationSpec>;

  FlowSpec(Variant v, std::string id);

  static FlowSpec product(ProductFlow pf, std::string id = "product");
  static FlowSpec transvection(
      TransvectionVariant variant = TransvectionVariant::Lower);
  static FlowSpec torus_geodesic(int n);
  static FlowSpec disk_billiard();
  static FlowSpec sphere_geodesic();
  static FlowSpec suspension(BaseMapSpec base_map, Chart m_chart,
                             VelocityField speed, DensityFn m_density);
  static FlowSpec padic(int p, int digits, std::vector<int> v_digits);

  const Variant& spec() const { return spec_; }
  const std::string& id() const { return id_; }

  int base_dim() const;
  int fiber_dim() const;
  /// Phase-point layout (base_dim base coords + fiber_dim fiber coords).
  bool is_map() const;       // integer time only
  bool is_semiflow() const;  // t >= 0 only

  /// Product-style view (chart, velocity, density) when the flow is a pure
  /// fiber translation over a chart base. Empty otherwise.
  std::optional<ProductFlow> product_view() const;

 private:
  Variant spec_;
  std::string id_;
};

/// Time evolution g_t. Throws std::invalid_argument on dimension mismatch,
/// non-integer t for maps, or negative t for semi-flows.
PhasePoint evolve(const FlowSpec& flow, const PhasePoint& p, double t);

/// Suspension flow over `base` with unit roof and constant speed.
/// state = (base point in [0,1), roof coordinate s in [0,1)).
std::pair<double, double> suspension_evolve(const BaseMapSpec& base,
                                            double speed,
                                            std::pair<double, double> state,
                                            double t);

/// i.i.d. samples of the invariant measure; deterministic given seed.
std::vector<PhasePoint> sample_invariant(const FlowSpec& flow, int count,
                                         std::uint64_t seed);

/// Checks the base density integrates to 1 within 1e-6 (when present).
void validate_flow(const FlowSpec& flow);

}  // namespace shear
