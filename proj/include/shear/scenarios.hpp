#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shear/analysis.hpp"
#include "shear/config.hpp"
#include "shear/counterexamples.hpp"
#include "shear/criterion.hpp"
#include "shear/lattice.hpp"

namespace shear {

/// Command-line overrides; flags win over config values.
struct RunOverrides {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;  // 0 = auto
};

/// Builds the flow described by the [flow] section of a config.
FlowSpec build_flow(const Config& cfg);

/// Builds the observable described by the given section for `flow`.
FourierObservable build_observable(const Config& cfg,
                                   const std::string& section,
                                   const FlowSpec& flow);

struct SaturnReport {
  std::vector<double> times;
  std::vector<std::array<double, 8>> mode_mags;  // angular modes 1..8
};

/// Dust-cloud equidistribution: particles on circular orbits with angular
/// speed omega(r) = r^{-3/2}; reports bin-averaged angular Fourier modes.
SaturnReport run_saturn(double r0, double r1, double arc_turns, int particles,
                        const std::vector<double>& times, int radial_bins,
                        std::uint64_t seed);

struct WavefrontReport {
  std::vector<double> times;
  std::vector<double> discrepancy;
};

/// Unit-speed wavefront on the flat torus; star discrepancy per frame.
WavefrontReport run_wavefront(int directions, const std::vector<double>& times);

/// Star discrepancy of points in [0,1)^2 over the 32 x 32 anchored box family.
double star_discrepancy_32(const std::vector<std::array<double, 2>>& pts);

/// Runs the scenario described by `cfg`, writing CSV artifacts under
/// `ov.out_dir`. Returns 0 on success, 2 on validation errors, 3 on
/// numeric-convergence failures.
int run_job(const Config& cfg, const RunOverrides& ov, std::ostream& log);

}  // namespace shear
