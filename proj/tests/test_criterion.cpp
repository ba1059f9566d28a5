#include "doctest.h"
#include "shear/criterion.hpp"

#include <cmath>
#include <sstream>

using namespace shear;

namespace {

const std::vector<double> kDeltas{0.32, 0.16, 0.08, 0.04, 0.02, 0.01, 0.005};

VelocityField linear_1d() {
  return VelocityField(1, 1, [](const Vec& x) { return Vec{x[0]}; }, "linear");
}

}  // namespace

TEST_CASE("unit-slope field has empty small sublevel sets") {
  const Chart chart{{0.0}, {1.0}};
  CHECK(sublevel_measure(linear_1d(), chart, {1}, 0.5, 64) == 0.0);
}

TEST_CASE("constant field fills the whole chart at any delta") {
  const Chart chart{{0.0, 0.0}, {1.0, 1.0}};
  const VelocityField v = VelocityField::constant(2, {0.3, 0.9});
  CHECK(sublevel_measure(v, chart, {1, 0}, 1e-6, 32) ==
        doctest::Approx(1.0));
}

TEST_CASE("billiard ladder shrinks linearly in delta (root-neighborhood oracle)") {
  const Chart chart{{-M_PI / 2}, {M_PI / 2}};
  const VelocityField v = VelocityField::disk_billiard();
  const FrequencyVector xi{1, 1};
  // independent oracle: fine scan of |d/dtheta <xi, v>| via finite differences
  auto grad = [&](double th) {
    const double h = 1e-6;
    const Vec a = v({th + h}), b = v({th - h});
    return ((a[0] - b[0]) + (a[1] - b[1])) / (2.0 * h);
  };
  for (double delta : {0.1, 0.05, 0.025}) {
    const int N = 200000;
    long hits = 0;
    for (int i = 0; i < N; ++i) {
      const double th = -M_PI / 2 + (i + 0.5) * M_PI / N;
      if (std::fabs(grad(th)) <= delta) ++hits;
    }
    const double oracle = M_PI * hits / N;
    const double got = sublevel_measure(v, chart, xi, delta, 128);
    CHECK(got == doctest::Approx(oracle).epsilon(0.15));
  }
  const double m1 = sublevel_measure(v, chart, xi, 0.1, 128);
  const double m4 = sublevel_measure(v, chart, xi, 0.025, 128);
  CHECK(m4 < m1);
  CHECK(m4 == doctest::Approx(m1 / 4.0).epsilon(0.3));  // ~ linear in delta
}

TEST_CASE("sublevel measure is monotone in delta") {
  const Chart chart{{0.0}, {2.0 * M_PI}};
  const VelocityField v = VelocityField::torus_direction(2);
  double prev = -1.0;
  for (double delta : {0.01, 0.05, 0.2, 1.0}) {
    const double m = sublevel_measure(v, chart, {2, 3}, delta, 64);
    CHECK(m >= prev);
    prev = m;
  }
}

TEST_CASE("frequency scaling identity holds exactly on a fixed grid") {
  const Chart chart{{0.0}, {2.0 * M_PI}};
  const VelocityField v = VelocityField::torus_direction(2);
  for (int k : {2, 3, 5}) {
    const double a = sublevel_measure(v, chart, {k, -2 * k}, 0.4, 64);
    const double b = sublevel_measure(v, chart, {1, -2}, 0.4 / k, 64);
    CHECK(a == b);
  }
}

TEST_CASE("grid refinement moves measures by at most max(5%, 2 cells)") {
  const Chart chart{{-M_PI / 2}, {M_PI / 2}};
  const VelocityField v = VelocityField::disk_billiard();
  for (double delta : {0.2, 0.05}) {
    const double coarse = sublevel_measure(v, chart, {1, 1}, delta, 64);
    const double fine = sublevel_measure(v, chart, {1, 1}, delta, 128);
    const double tol = std::max(0.05 * std::max(coarse, fine),
                                2.0 * chart.volume() / 64);
    CHECK(std::fabs(coarse - fine) <= tol);
  }
}

TEST_CASE("direction field on the circle is shear-consistent") {
  const Chart chart{{0.0}, {2.0 * M_PI}};
  const auto rep =
      criterion_report(VelocityField::torus_direction(2), chart, 8, kDeltas, 64);
  CHECK(rep.verdict == Verdict::ShearConsistent);
  for (const auto& ladder : rep.ladders) {
    double prev = 1e9;
    for (const auto& e : ladder.entries) {
      CHECK(e.measure <= prev);  // ladder monotone as delta decreases
      CHECK(e.measure >= 0.0);
      CHECK(e.measure <= rep.chart_volume);
      prev = e.measure;
    }
  }
}

TEST_CASE("constant field is shear-violated") {
  const Chart chart{{0.0, 0.0}, {1.0, 1.0}};
  const auto rep = criterion_report(VelocityField::constant(2, {0.7}), chart, 4,
                                    kDeltas, 32);
  CHECK(rep.verdict == Verdict::ShearViolated);
}

TEST_CASE("identically critical frequency forces a violation") {
  // v(x1, x2) = (x1, 0): <(0,1), v> vanishes on the whole chart
  const VelocityField v(
      2, 2, [](const Vec& x) { return Vec{x[0], 0.0}; }, "shearless-axis");
  const Chart chart{{0.0, 0.0}, {1.0, 1.0}};
  const auto rep = criterion_report(v, chart, 2, kDeltas, 32);
  CHECK(rep.verdict == Verdict::ShearViolated);
}

TEST_CASE("criterion CSV lists ladders and the verdict line") {
  const Chart chart{{0.0}, {1.0}};
  const auto rep = criterion_report(linear_1d(), chart, 2, {0.32, 0.01}, 16);
  std::ostringstream os;
  write_csv(rep, os);
  const std::string text = os.str();
  CHECK(text.rfind("xi,delta,measure\n", 0) == 0);
  CHECK(text.find("# verdict: shear-consistent") != std::string::npos);
  CHECK(text.find("1,0.32") != std::string::npos);
}
