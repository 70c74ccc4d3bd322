#ifndef HDX_INTMATH_HPP
#define HDX_INTMATH_HPP

#include <cstdint>

#include "hdx/errors.hpp"

// Exact integer arithmetic helpers. Every fair-share comparison in the
// library goes through in_approx/in_approx_ratio; no floating point is used
// anywhere in the core.

namespace hdx::intmath {

// floor(p/q) for p >= 0, q > 0.
inline long long floor_div(long long p, long long q) {
  if (q <= 0 || p < 0) throw DomainError("floor_div expects p >= 0, q > 0");
  return p / q;
}

// ceil(p/q) for p >= 0, q > 0.
inline long long ceil_div(long long p, long long q) {
  if (q <= 0 || p < 0) throw DomainError("ceil_div expects p >= 0, q > 0");
  return (p + q - 1) / q;
}

// x ~ p/q, i.e. floor(p/q) <= x <= ceil(p/q).
inline bool in_approx(long long x, long long p, long long q) {
  return floor_div(p, q) <= x && x <= ceil_div(p, q);
}

// a/b ~ p/q with b > 0, evaluated as floor(p/q)*b <= a <= ceil(p/q)*b.
inline bool in_approx_ratio(long long a, long long b, long long p,
                            long long q) {
  if (b <= 0) throw DomainError("in_approx_ratio expects b > 0");
  return floor_div(p, q) * b <= a && a <= ceil_div(p, q) * b;
}

inline long long binomial(long long n, long long k) {
  if (n < 0 || k < 0) throw DomainError("binomial expects n, k >= 0");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  long long result = 1;
  for (long long i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

inline long long ipow(long long base, long long exp) {
  if (exp < 0) throw DomainError("ipow expects exp >= 0");
  long long result = 1;
  for (long long i = 0; i < exp; ++i) result *= base;
  return result;
}

}  // namespace hdx::intmath

#endif  // HDX_INTMATH_HPP
