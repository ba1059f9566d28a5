#include "shear/lattice.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>

namespace shear {

namespace {

// Common denominator q <= 64 turning every center coordinate into an integer.
struct RationalCenter {
  long long q = 1;
  std::vector<long long> X;  // q * center
};

std::optional<RationalCenter> rationalize(const Vec& center) {
  for (long long q = 1; q <= 64; ++q) {
    bool ok = true;
    RationalCenter rc;
    rc.q = q;
    for (double c : center) {
      const double scaled = c * q;
      const long long r = std::llround(scaled);
      if (std::fabs(scaled - r) > 1e-9) {
        ok = false;
        break;
      }
      rc.X.push_back(r);
    }
    if (ok) return rc;
  }
  return std::nullopt;
}

void check_budget(int n, double r) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("lattice: dimension must be 2 or 3");
  if ((n == 2 && r > 1e5) || (n == 3 && r > 2e3))
    throw std::invalid_argument("lattice: radius exceeds enumeration budget");
}

// Counts m in Z^n with lo <= ||m - center|| <= hi (lo < 0 means a ball).
ShellCount count_region(int n, const Vec& center, double lo, double hi) {
  check_budget(n, hi);
  if (static_cast<int>(center.size()) != n)
    throw std::invalid_argument("lattice: center dimension mismatch");
  const auto rc = rationalize(center);

  ShellCount out;
  out.exact = rc.has_value();
  const long long q = rc ? rc->q : 1;
  const long double scale = static_cast<long double>(q) * q;
  const long double lo2s = lo > 0 ? scale * lo * lo : -1.0L;
  const long double hi2s = scale * hi * hi;
  // Absolute snap making boundary comparisons inclusive on the exact path.
  const long double snap = 1e-6L;
  const long long loI =
      lo > 0 ? static_cast<long long>(std::ceil(lo2s - snap)) : 0;
  const long long hiI = static_cast<long long>(std::floor(hi2s + snap));
  const long double guard = 1e-12L * (1.0L + hi2s);

  // classify one inner-coordinate candidate given the outer squared part
  auto classify = [&](long long s_outer_int, long double s_outer_f,
                      long long y, int inner) {
    if (rc) {
      const long long dy = q * y - rc->X[inner];
      const long long D = s_outer_int + dy * dy;
      if (D >= loI && D <= hiI) ++out.count;
    } else {
      const long double dy = y - center[inner];
      const long double d2 = s_outer_f + dy * dy;
      const bool inside = d2 >= lo2s - guard && d2 <= hi2s + guard;
      if (inside) ++out.count;
      if (std::fabs(d2 - lo2s) <= guard || std::fabs(d2 - hi2s) <= guard)
        ++out.boundary_ambiguous;
    }
  };

  // enumerate the inner coordinate over the (at most two) candidate bands
  auto sweep_inner = [&](long long s_int, long double s_f, int inner) {
    const long double B = hi2s - s_f;
    if (B < -snap) return;
    const long double A = lo2s - s_f;  // negative for balls / interior slices
    const double c = center[inner];
    const double sqB = std::sqrt(std::max(0.0L, B)) / q;
    if (A <= 0) {
      const long long y0 = static_cast<long long>(std::floor(c - sqB)) - 1;
      const long long y1 = static_cast<long long>(std::ceil(c + sqB)) + 1;
      for (long long y = y0; y <= y1; ++y) classify(s_int, s_f, y, inner);
      return;
    }
    const double sqA = std::sqrt(static_cast<long double>(A)) / q;
    const long long a0 = static_cast<long long>(std::floor(c - sqB)) - 1;
    const long long a1 = static_cast<long long>(std::ceil(c - sqA)) + 1;
    const long long b0 =
        std::max(a1 + 1, static_cast<long long>(std::floor(c + sqA)) - 1);
    const long long b1 = static_cast<long long>(std::ceil(c + sqB)) + 1;
    for (long long y = a0; y <= a1; ++y) classify(s_int, s_f, y, inner);
    for (long long y = b0; y <= b1; ++y) classify(s_int, s_f, y, inner);
  };

  const long long m0_lo = static_cast<long long>(std::floor(center[0] - hi)) - 1;
  const long long m0_hi = static_cast<long long>(std::ceil(center[0] + hi)) + 1;
  for (long long m0 = m0_lo; m0 <= m0_hi; ++m0) {
    long long s0_int = 0;
    long double s0_f;
    if (rc) {
      const long long d = q * m0 - rc->X[0];
      s0_int = d * d;
      s0_f = static_cast<long double>(s0_int);
    } else {
      const long double d = m0 - center[0];
      s0_f = d * d;
    }
    if (n == 2) {
      sweep_inner(s0_int, s0_f, 1);
      continue;
    }
    const long double rem2 = hi2s - s0_f;
    if (rem2 < -snap) continue;
    const double rem = std::sqrt(std::max(0.0L, rem2)) / q;
    const long long m1_lo =
        static_cast<long long>(std::floor(center[1] - rem)) - 1;
    const long long m1_hi =
        static_cast<long long>(std::ceil(center[1] + rem)) + 1;
    for (long long m1 = m1_lo; m1 <= m1_hi; ++m1) {
      long long s_int = 0;
      long double s_f;
      if (rc) {
        const long long d = q * m1 - rc->X[1];
        s_int = s0_int + d * d;
        s_f = static_cast<long double>(s_int);
      } else {
        const long double d = m1 - center[1];
        s_f = s0_f + d * d;
      }
      sweep_inner(s_int, s_f, 2);
    }
  }
  return out;
}

}  // namespace

ShellCount count_shell(const ShellQuery& query) {
  if (!(query.eps > 0.0) || query.eps >= 0.5)
    throw std::invalid_argument("count_shell: eps in (0, 1/2)");
  if (!(query.r > query.eps))
    throw std::invalid_argument("count_shell: need r > eps");
  return count_region(query.n, query.center, query.r - query.eps,
                      query.r + query.eps);
}

ShellCount count_ball(int n, const Vec& center, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("count_ball: r > 0");
  return count_region(n, center, -1.0, r);
}

ShellCount count_at_distance(int n, const Vec& center, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("count_at_distance: r > 0");
  return count_region(n, center, r, r);
}

double shell_asymptotic(const ShellQuery& query) {
  double surface;
  switch (query.n) {
    case 2: surface = 2.0 * M_PI; break;
    case 3: surface = 4.0 * M_PI; break;
    default:
      throw std::invalid_argument("shell_asymptotic: dimension must be 2 or 3");
  }
  return 2.0 * query.eps * std::pow(query.r, query.n - 1) * surface;
}

void write_csv(const std::vector<ShellQuery>& queries, std::ostream& os) {
  os << "r,epsilon,count,asymptotic,ratio\n";
  char buf[256];
  for (const auto& query : queries) {
    const ShellCount c = count_shell(query);
    const double asym = shell_asymptotic(query);
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%lld,%.17g,%.17g\n", query.r,
                  query.eps, c.count, asym, c.count / asym);
    os << buf;
  }
}

}  // namespace shear
