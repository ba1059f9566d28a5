#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shear/observables.hpp"

namespace shear {

struct QuadSpec {
  int resolution = 64;       // base node budget (scaled up with oscillation)
  double tolerance = 1e-6;   // N vs 2N relative tolerance
};

/// Exact spectral conditional covariance of the transvection map at time n.
/// Sums conj(c1(xi)) * c2(T*^n xi) over the non-invariant frequencies.
Complex spectral_cov_transvection(
    const FourierObservable& f1, const FourierObservable& f2, long n,
    TransvectionVariant variant = TransvectionVariant::Lower);

/// Spectral conditional covariance for fiber-translation flows over a chart
/// base:  sum_{xi != 0} int conj(a1_xi) a2_xi e^{2 pi i t <xi, v(x)>} dmu(x).
/// Quadrature-refined (N vs 2N); throws ConvergenceError on failure.
Complex spectral_cov_product_flow(const FlowSpec& flow,
                                  const FourierObservable& f1,
                                  const FourierObservable& f2, double t,
                                  const QuadSpec& quad = {});

struct McEstimate {
  Complex value;
  double stderr_ = 0.0;
};

/// Monte Carlo estimate of E(conj(f1) f2 o g_t) - E(conj(E f1|I) E f2|I).
McEstimate mc_cov(const FlowSpec& flow, const FourierObservable& f1,
                  const FourierObservable& f2, double t, int samples,
                  std::uint64_t seed);

struct EstimatorSpec {
  enum class Kind { Spectral, MonteCarlo };
  Kind kind = Kind::Spectral;
  QuadSpec quad;
  int samples = 10000;
  std::uint64_t seed = 0;
};

struct CovarianceSeries {
  std::vector<double> times;
  std::vector<Complex> values;
  std::vector<double> stderrs;  // 0 for spectral entries
  std::string estimator;
  std::string flow_id;
  std::string observable_ids;
};

/// Elementwise estimator over a sorted time grid. With threads > 1 the time
/// points are evaluated concurrently; per-point RNG streams are seed ^ index
/// so the result does not depend on scheduling.
CovarianceSeries cov_series(const FlowSpec& flow, const FourierObservable& f1,
                            const FourierObservable& f2,
                            const std::vector<double>& times,
                            const EstimatorSpec& est, int threads = 1);

/// CSV: header "t,re,im,abs,stderr,estimator", 17 significant digits.
void write_csv(const CovarianceSeries& series, std::ostream& os);

/// E(conj(E f1|I) E(f2|I)) for the given flow (used by the MC estimator).
Complex invariant_pairing(const FlowSpec& flow, const FourierObservable& f1,
                          const FourierObservable& f2, const QuadSpec& quad,
                          std::uint64_t seed);

}  // namespace shear
