#include "shear/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace shear {

namespace {

// Jacobian d v_k / d x_a at each cell center, central differences.
struct CellJacobians {
  int cells_total = 0;
  int base_dim = 0, fiber_dim = 0;
  double cell_volume = 0.0;
  std::vector<double> data;  // cells_total * base_dim * fiber_dim

  const double* at(int cell) const {
    return data.data() + static_cast<std::size_t>(cell) * base_dim * fiber_dim;
  }
};

CellJacobians cell_jacobians(const VelocityField& v, const Chart& chart,
                             int grid) {
  if (grid < 16) throw std::invalid_argument("sublevel_measure: grid >= 16");
  CellJacobians J;
  J.base_dim = chart.dim();
  J.fiber_dim = v.fiber_dim();
  J.cells_total = 1;
  for (int a = 0; a < J.base_dim; ++a) J.cells_total *= grid;
  J.cell_volume = chart.volume() / J.cells_total;
  J.data.resize(static_cast<std::size_t>(J.cells_total) * J.base_dim *
                J.fiber_dim);

  Vec x(J.base_dim), xp(J.base_dim), xm(J.base_dim), h(J.base_dim);
  for (int a = 0; a < J.base_dim; ++a)
    h[a] = (chart.hi[a] - chart.lo[a]) / (8.0 * grid);

  for (int cell = 0; cell < J.cells_total; ++cell) {
    int rem = cell;
    for (int a = 0; a < J.base_dim; ++a) {
      const int i = rem % grid;
      rem /= grid;
      x[a] = chart.lo[a] + (i + 0.5) / grid * (chart.hi[a] - chart.lo[a]);
    }
    double* row =
        J.data.data() + static_cast<std::size_t>(cell) * J.base_dim * J.fiber_dim;
    for (int a = 0; a < J.base_dim; ++a) {
      xp = x;
      xm = x;
      xp[a] += h[a];
      xm[a] -= h[a];
      const Vec vp = v(xp), vm = v(xm);
      for (int k = 0; k < J.fiber_dim; ++k)
        row[a * J.fiber_dim + k] = (vp[k] - vm[k]) / (2.0 * h[a]);
    }
  }
  return J;
}

double ladder_measure(const CellJacobians& J, const FrequencyVector& xi,
                      double delta) {
  long count = 0;
  for (int cell = 0; cell < J.cells_total; ++cell) {
    const double* row = J.at(cell);
    double g2 = 0.0;
    for (int a = 0; a < J.base_dim; ++a) {
      double da = 0.0;
      for (int k = 0; k < J.fiber_dim; ++k) da += xi[k] * row[a * J.fiber_dim + k];
      g2 += da * da;
    }
    if (g2 <= delta * delta) ++count;
  }
  return count * J.cell_volume;
}

bool primitive_representative(const FrequencyVector& xi) {
  int g = 0, lead = 0;
  for (int k : xi) {
    g = std::gcd(g, std::abs(k));
    if (lead == 0) lead = k;
  }
  return g == 1 && lead > 0;  // one representative per +/- ray
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ShearConsistent: return "shear-consistent";
    case Verdict::ShearViolated: return "shear-violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double sublevel_measure(const VelocityField& v, const Chart& chart,
                        const FrequencyVector& xi, double delta, int grid) {
  if (delta <= 0.0) throw std::invalid_argument("sublevel_measure: delta > 0");
  if (static_cast<int>(xi.size()) != v.fiber_dim())
    throw std::invalid_argument("sublevel_measure: frequency dim mismatch");
  const CellJacobians J = cell_jacobians(v, chart, grid);
  return ladder_measure(J, xi, delta);
}

CriterionReport criterion_report(const VelocityField& v, const Chart& chart,
                                 int xi_cutoff, std::vector<double> deltas,
                                 int grid) {
  if (xi_cutoff < 1)
    throw std::invalid_argument("criterion_report: xi_cutoff >= 1");
  if (deltas.size() < 2)
    throw std::invalid_argument("criterion_report: need >= 2 deltas");
  std::sort(deltas.begin(), deltas.end(), std::greater<>());

  CriterionReport rep;
  rep.grid = grid;
  rep.xi_cutoff = xi_cutoff;
  rep.chart_volume = chart.volume();
  const CellJacobians J = cell_jacobians(v, chart, grid);

  const int d = v.fiber_dim();
  std::vector<FrequencyVector> freqs;
  FrequencyVector xi(d, -xi_cutoff);
  while (true) {
    if (primitive_representative(xi)) freqs.push_back(xi);
    int a = 0;
    for (; a < d; ++a) {
      if (++xi[a] <= xi_cutoff) break;
      xi[a] = -xi_cutoff;
    }
    if (a == d) break;
  }

  bool all_vanish = true, any_stable = false;
  for (const auto& f : freqs) {
    FrequencyLadder ladder{f, {}};
    for (double dlt : deltas)
      ladder.entries.push_back({dlt, ladder_measure(J, f, dlt)});
    const double first = ladder.entries.front().measure;
    const double last = ladder.entries.back().measure;
    const double prev = ladder.entries[ladder.entries.size() - 2].measure;
    const double ratio = deltas.back() / deltas.front();
    // small sublevel sets quantize to whole grid cells; allow 2 cells of slack
    const double slack = 2.0 * J.cell_volume;
    if (!(last <= 2.0 * ratio * first + slack &&
          last <= 0.01 * rep.chart_volume + slack))
      all_vanish = false;
    if (last > 0.01 * rep.chart_volume && prev > 0.01 * rep.chart_volume &&
        last > 0.5 * prev)
      any_stable = true;
    rep.ladders.push_back(std::move(ladder));
  }
  rep.verdict = all_vanish  ? Verdict::ShearConsistent
                : any_stable ? Verdict::ShearViolated
                             : Verdict::Inconclusive;
  return rep;
}

void write_csv(const CriterionReport& report, std::ostream& os) {
  os << "xi,delta,measure\n";
  char buf[256];
  for (const auto& ladder : report.ladders) {
    std::string tag;
    for (std::size_t k = 0; k < ladder.xi.size(); ++k) {
      if (k) tag += ':';
      tag += std::to_string(ladder.xi[k]);
    }
    for (const auto& e : ladder.entries) {
      std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g\n", tag.c_str(), e.delta,
                    e.measure);
      os << buf;
    }
  }
  os << "# verdict: " << verdict_name(report.verdict) << "\n";
}

}  // namespace shear
