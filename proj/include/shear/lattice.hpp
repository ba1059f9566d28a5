#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "shear/quadrature.hpp"

namespace shear {

/// Integer points within distance eps of the sphere S(center, r).
struct ShellQuery {
  int n = 2;  // 2 or 3
  Vec center;
  double r = 1.0;
  double eps = 0.25;  // in (0, 1/2)
};

struct ShellCount {
  long long count = 0;
  long long boundary_ambiguous = 0;  // floating path only; 0 on the exact path
  bool exact = false;                // rational center, integer comparisons
};

/// Exact count of m in Z^n with | ||m - center|| - r | <= eps.
/// Centers with a common denominator q <= 64 are scaled to integers and
/// compared exactly; otherwise floating comparisons with a 1e-12 guard band.
ShellCount count_shell(const ShellQuery& q);

/// Exact count of m in Z^n with ||m - center|| <= r.
ShellCount count_ball(int n, const Vec& center, double r);

/// Count of m at exact distance r (rational-center path; needs q^2 r^2
/// integral to be meaningful, otherwise counts within the guard band).
ShellCount count_at_distance(int n, const Vec& center, double r);

/// 2 eps r^{n-1} surface(n), surface(2) = 2 pi, surface(3) = 4 pi.
double shell_asymptotic(const ShellQuery& q);

/// CSV "r,epsilon,count,asymptotic,ratio" for a batch of queries.
void write_csv(const std::vector<ShellQuery>& queries, std::ostream& os);

}  // namespace shear
