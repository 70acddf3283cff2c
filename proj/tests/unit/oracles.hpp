#pragma once

// Slow reference computations used to pin the fast paths.

#include <cstdint>
#include <vector>

#include "satotate/finite_field.hpp"

namespace oracle {

using satotate::u64;

inline bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline u64 naive_pow(u64 b, u64 e, u64 q) {
  u64 r = 1 % q;
  for (u64 i = 0; i < e; ++i) r = r * b % q;
  return r;
}

// #{(x, y) in F_q^2 : y^2 = x^m - 1} by tabulating squares, plus the points at infinity.
inline std::int64_t brute_point_count(int m, u64 q) {
  std::vector<std::int64_t> roots(q, 0);
  for (u64 y = 0; y < q; ++y) ++roots[y * y % q];
  std::int64_t affine = 0;
  for (u64 x = 0; x < q; ++x) affine += roots[(naive_pow(x, m, q) + q - 1) % q];
  return affine + (m % 2 == 0 ? 2 : 1);
}

// Same over F_{q^k}, enumerating every pair through the field multiplication.
inline std::int64_t brute_point_count(int m, const satotate::ExtField& f) {
  const u64 size = f.size();
  std::vector<std::int64_t> roots(size, 0);
  for (u64 y = 0; y < size; ++y) {
    const auto e = f.decode(y);
    ++roots[f.encode(f.mul(e, e))];
  }
  std::int64_t affine = 0;
  for (u64 x = 0; x < size; ++x) {
    auto e = f.decode(x);
    auto pw = f.one();
    for (int i = 0; i < m; ++i) pw = f.mul(pw, e);
    affine += roots[f.encode(f.sub(pw, f.one()))];
  }
  // the points at infinity are rational over every extension for even m (leading coefficient 1)
  return affine + (m % 2 == 0 ? 2 : 1);
}

}  // namespace oracle
