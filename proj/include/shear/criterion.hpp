#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shear/observables.hpp"

namespace shear {

enum class Verdict { ShearConsistent, ShearViolated, Inconclusive };

std::string verdict_name(Verdict v);

struct LadderEntry {
  double delta;
  double measure;
};

struct FrequencyLadder {
  FrequencyVector xi;
  std::vector<LadderEntry> entries;  // delta descending
};

struct CriterionReport {
  std::vector<FrequencyLadder> ladders;
  Verdict verdict = Verdict::Inconclusive;
  int grid = 0;
  int xi_cutoff = 0;
  double chart_volume = 0.0;
};

/// Lebesgue measure of the cells whose center satisfies
/// ||grad <xi, v>|| <= delta (ties counted inside). Central differences with
/// step h = chart-size / (8 * grid).
double sublevel_measure(const VelocityField& v, const Chart& chart,
                        const FrequencyVector& xi, double delta, int grid);

/// Sweeps the primitive frequencies with ||xi||_inf <= xi_cutoff (one
/// representative per ray; scaled frequencies reduce to delta/k by the
/// gradient scaling identity). Verdicts are numerical evidence, not proof.
CriterionReport criterion_report(const VelocityField& v, const Chart& chart,
                                 int xi_cutoff, std::vector<double> deltas,
                                 int grid);

/// CSV rows "xi,delta,measure" (xi colon-separated) plus "# verdict: ...".
void write_csv(const CriterionReport& report, std::ostream& os);

}  // namespace shear
