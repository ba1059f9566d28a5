#include "shear/counterexamples.hpp"

#include <cmath>

namespace shear {

PAdicInteger PAdicInteger::zero(int p, int K) {
  if (p < 2 || K < 1) throw std::invalid_argument("padic: need p >= 2, K >= 1");
  PAdicInteger a;
  a.p = p;
  a.digits.assign(K, 0);
  return a;
}

PAdicInteger PAdicInteger::from_integer(int p, int K, long long value) {
  PAdicInteger a = zero(p, K);
  long long rem = value;
  // negative values wrap mod p^K (p-adic complement)
  for (int j = 0; j < K; ++j) {
    long long d = rem % p;
    if (d < 0) d += p;
    a.digits[j] = static_cast<int>(d);
    rem = (rem - d) / p;
  }
  return a;
}

PAdicInteger padic_add(const PAdicInteger& a, const PAdicInteger& b) {
  if (a.p != b.p || a.K() != b.K())
    throw std::invalid_argument("padic_add: mismatched p or K");
  PAdicInteger c = PAdicInteger::zero(a.p, a.K());
  int carry = 0;
  for (int j = 0; j < a.K(); ++j) {
    const int s = a.digits[j] + b.digits[j] + carry;
    c.digits[j] = s % a.p;
    carry = s / a.p;
  }
  return c;  // carry out of digit K-1 discarded
}

PAdicInteger padic_scale(const PAdicInteger& a, long long n) {
  PAdicInteger c = PAdicInteger::zero(a.p, a.K());
  long long carry = 0;
  long long m = n;
  if (m < 0) {
    // reduce mod p^K without overflow: scale by (p^K + n mod p^K)
    long long mod = 1;
    for (int j = 0; j < a.K() && mod < (1LL << 62) / a.p; ++j) mod *= a.p;
    m = ((n % mod) + mod) % mod;
  }
  for (int j = 0; j < a.K(); ++j) {
    const long long s = static_cast<long long>(a.digits[j]) * m + carry;
    c.digits[j] = static_cast<int>(s % a.p);
    carry = s / a.p;
  }
  return c;
}

Complex PAdicCharacterObservable::chi(long long m) const {
  long long r = m % p;
  if (r < 0) r += p;
  return std::polar(1.0, 2.0 * M_PI * j * r / p);
}

Complex PAdicCharacterObservable::eval(const PAdicInteger& y) const {
  if (y.p != p || level < 0 || level >= y.K())
    throw std::invalid_argument("padic character: level/p mismatch");
  return chi(y.digits[level]);
}

std::vector<Complex> padic_orbit_values(const PAdicInteger& v,
                                        const PAdicCharacterObservable& obs,
                                        const PAdicInteger& y0, int n_max) {
  if (v.p != obs.p || y0.p != obs.p)
    throw std::invalid_argument("padic_orbit_values: mismatched p");
  if (obs.j % obs.p == 0)
    throw std::invalid_argument("padic_orbit_values: trivial character");
  for (int jd = 0; jd < obs.level; ++jd)
    if (v.digits[jd] != 0)
      throw std::invalid_argument(
          "padic_orbit_values: v must vanish below the character level");
  std::vector<Complex> out;
  out.reserve(n_max + 1);
  PAdicInteger y = y0;
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(obs.eval(y));
    y = padic_add(y, v);
  }
  return out;
}

std::vector<Complex> padic_cov_series(const PAdicInteger& v,
                                      const PAdicCharacterObservable& obs,
                                      int n_max) {
  // E chi(y_N) = 0 for a nontrivial character, so cov_n reduces to
  // (1/p) sum_m conj(chi(m)) chi((y_m + n v)_N); with v's low digits zero no
  // carry reaches digit N, so averaging over digit N alone is exact.
  for (int jd = 0; jd < obs.level; ++jd)
    if (v.digits[jd] != 0)
      throw std::invalid_argument(
          "padic_cov_series: v must vanish below the character level");
  std::vector<Complex> out;
  out.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const PAdicInteger nv = padic_scale(v, n);
    Complex acc = 0.0;
    for (int m = 0; m < obs.p; ++m) {
      PAdicInteger y = PAdicInteger::zero(v.p, v.K());
      y.digits[obs.level] = m;
      acc += std::conj(obs.chi(m)) * obs.eval(padic_add(y, nv));
    }
    out.push_back(acc / static_cast<double>(obs.p));
  }
  return out;
}

SphereCertificate sphere_no_decay_certificate(const FourierObservable& f1,
                                              const FourierObservable& f2,
                                              double t0, int samples,
                                              std::uint64_t seed) {
  if (t0 < 0.0)
    throw std::invalid_argument("sphere certificate: t0 >= 0");
  const FlowSpec flow = FlowSpec::sphere_geodesic();
  const auto pts = sample_invariant(flow, samples, seed);
  const Complex pairing = invariant_pairing(flow, f1, f2, {}, seed);

  auto estimate = [&](double t, double* se_out) {
    Complex mean = 0.0;
    std::vector<Complex> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      vals[i] = std::conj(f1.eval(pts[i])) * f2.eval(evolve(flow, pts[i], t));
      mean += vals[i];
    }
    mean /= static_cast<double>(pts.size());
    if (se_out) {
      double var = 0.0;
      for (const Complex& z : vals) var += std::norm(z - mean);
      var /= static_cast<double>(pts.size() - 1);
      *se_out = std::sqrt(var / pts.size());
    }
    return mean - pairing;
  };

  SphereCertificate cert;
  cert.cov_t0 = estimate(t0, &cert.stderr_t0);
  cert.cov_t0_plus_period = estimate(t0 + 2.0 * M_PI, nullptr);
  cert.difference = std::abs(cert.cov_t0 - cert.cov_t0_plus_period);
  return cert;
}

}  // namespace shear
