#pragma once

#include <vector>

#include "shear/covariance.hpp"
#include "shear/padic.hpp"

namespace shear {

/// Character observable f(y) = chi(y_level) with chi(m) = e^{2 pi i j m / p}.
struct PAdicCharacterObservable {
  int p = 2;
  int level = 0;  // digit index N
  int j = 1;      // character index, 1 <= j <= p-1

  Complex chi(long long m) const;
  Complex eval(const PAdicInteger& y) const;
};

/// f(T^n y0) for n = 0..n_max under the translation y -> y + v, computed by
/// repeated padic_add. With v's digits below obs.level all zero and
/// v.digits[level] = k != 0 this equals chi(y0_level) chi(k)^n exactly.
std::vector<Complex> padic_orbit_values(const PAdicInteger& v,
                                        const PAdicCharacterObservable& obs,
                                        const PAdicInteger& y0, int n_max);

/// Exact covariance series cov_n of the character observable under the
/// translation (average over the uniform digit measure; p-periodic in n and
/// |cov_n| = 1 when the carry-free precondition holds).
std::vector<Complex> padic_cov_series(const PAdicInteger& v,
                                      const PAdicCharacterObservable& obs,
                                      int n_max);

struct SphereCertificate {
  Complex cov_t0;
  Complex cov_t0_plus_period;
  double difference;  // |cov(t0) - cov(t0 + 2 pi)|
  double stderr_t0;
};

/// Common-random-numbers check of g_{t+2pi} = g_t on the round-sphere
/// geodesic flow: both covariances share the same samples and seed.
SphereCertificate sphere_no_decay_certificate(const FourierObservable& f1,
                                              const FourierObservable& f2,
                                              double t0, int samples,
                                              std::uint64_t seed);

}  // namespace shear
