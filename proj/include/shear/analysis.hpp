#pragma once

#include <iosfwd>
#include <vector>

#include "shear/covariance.hpp"

namespace shear {

struct DecayFit {
  double exponent = 0.0;   // p in |cov| ~ A t^-p
  double amplitude = 0.0;  // A
  double r2 = 0.0;
  double t_min = 0.0, t_max = 0.0;
  bool fully_decayed = false;  // every envelope value below 1e-14
};

/// Log-log least squares on the block envelope of |value| (max per block of
/// `block` consecutive samples, suppressing oscillation zeros).
DecayFit fit_power_law(const CovarianceSeries& series, double t_min,
                       double t_max, int block = 10);

/// Least squares of log|value| = log A - c n over entries above 1e-14
/// (exponential decay law; abscissa is n itself, not log n).
DecayFit fit_exponential(const std::vector<double>& ns,
                         const std::vector<double>& abs_values);

struct BoundCheck {
  long n;
  double cov_abs;
  double bound;
  bool ok;
};

/// |spectral transvection cov at n|  vs  4^s n^{-2s} |f1|_{H^{s,0}} |f2|_{H^{s,0}}.
std::vector<BoundCheck> check_transvection_bound(const FourierObservable& f1,
                                                 const FourierObservable& f2,
                                                 double s, long n_min,
                                                 long n_max);

/// Spectral covariance series on the flat geodesic flow of dimension n_dim,
/// envelope-fit over [t_min, t_max]; expected exponent (n_dim - 1) / 2.
DecayFit check_geodesic_rate(int n_dim, const FourierObservable& f1,
                             const FourierObservable& f2, double t_min,
                             double t_max, int time_points = 240,
                             const QuadSpec& quad = {}, int threads = 1);

/// Appends "# fit: exponent=..., amplitude=..., r2=..." to a CSV stream.
void append_fit_comment(const DecayFit& fit, std::ostream& os);

/// Log-spaced grid, ascending, endpoints included.
std::vector<double> log_spaced(double t_min, double t_max, int count);

}  // namespace shear
