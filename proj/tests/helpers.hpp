#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace testutil {

/// Kolmogorov-Smirnov statistic against a uniform [0,1] law.
inline double ks_uniform(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i];
    d = std::max(d, std::fabs((i + 1) / n - x));
    d = std::max(d, std::fabs(x - i / n));
  }
  return d;
}

/// 1% critical value of the KS statistic (asymptotic).
inline double ks_critical_1pct(std::size_t n) {
  return 1.63 / std::sqrt(static_cast<double>(n));
}

/// Pearson chi-square statistic for observed counts vs a uniform law.
inline double chi_square_uniform(const std::vector<long>& counts) {
  long total = 0;
  for (long c : counts) total += c;
  const double expected = static_cast<double>(total) / counts.size();
  double stat = 0.0;
  for (long c : counts) stat += (c - expected) * (c - expected) / expected;
  return stat;
}

/// 1% chi-square critical values for small degrees of freedom.
inline double chi2_critical_1pct(int dof) {
  switch (dof) {
    case 1: return 6.635;
    case 2: return 9.210;
    case 3: return 11.345;
    case 4: return 13.277;
    case 5: return 15.086;
    case 6: return 16.812;
    default: return dof + 3.0 * std::sqrt(2.0 * dof);  // loose normal tail
  }
}

}  // namespace testutil
