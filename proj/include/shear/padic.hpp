#pragma once

#include <stdexcept>
#include <vector>

namespace shear {

/// Truncated p-adic integer: digits[j] is the coefficient of p^j,
/// 0 <= digits[j] < p, fixed length K.
struct PAdicInteger {
  int p = 2;
  std::vector<int> digits;

  int K() const { return static_cast<int>(digits.size()); }
  static PAdicInteger zero(int p, int K);
  static PAdicInteger from_integer(int p, int K, long long value);
  bool operator==(const PAdicInteger&) const = default;
};

/// Digitwise base-p addition with carry; carry out of digit K-1 is discarded.
/// Throws std::invalid_argument on mismatched p or K.
PAdicInteger padic_add(const PAdicInteger& a, const PAdicInteger& b);

/// n * a (mod p^K), exact digit arithmetic; n may be negative.
PAdicInteger padic_scale(const PAdicInteger& a, long long n);

}  // namespace shear
