#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "satotate/cyclotomic.hpp"
#include "satotate/family.hpp"
#include "satotate/finite_field.hpp"

namespace satotate {

// q + sum_x phi(x^m - 1), summing over the image of x -> x^m with fiber weights.
i64 affine_count(const CurveFamily& family, const PrimeField& field);
i64 affine_count(const CurveFamily& family, const ExtField& field);
i64 point_count(const CurveFamily& family, const PrimeField& field);

// q + 1 - #C(F_q). Throws for q | 2m.
i64 trace_a1(const CurveFamily& family, u64 q);

// e_1..e_depth of the Frobenius eigenvalues (e_1 = a_q). Throws BoundExceeded if q^depth is
// larger than the enumeration bound.
std::vector<i64> lpoly_coeffs(const CurveFamily& family, u64 q, unsigned depth,
                              u64 enumeration_bound = kDefaultEnumerationBound);
// Largest j <= depth with q^j <= bound.
unsigned feasible_depth(u64 q, unsigned depth, u64 enumeration_bound = kDefaultEnumerationBound);
// Coefficients c_0..c_2g of prod (1 - pi T) from e_1..e_g via c_{2g-i} = q^(g-i) c_i.
// The signs are (-1)^i e_i.
std::vector<Int> full_lpoly(const CurveFamily& family, u64 q, const std::vector<i64>& e);

// Good reduction: q odd prime not dividing m.
bool is_good_prime(const CurveFamily& family, u64 q);

struct TraceRecord {
  u64 q = 0;
  i64 a = 0;
  std::vector<i64> deep;  // e_2..e_k
  bool operator==(const TraceRecord& o) const = default;
};

struct JacobiSum {
  CyclotomicElement value;  // in Q(zeta_p)
  u64 q = 0;
  int g1 = 0;
  int g2 = 0;
};

// -sum_x chi^g1(x) chi^g2(1-x), chi of order p.
JacobiSum jacobi_sum(u64 q, int p, int g1, int g2);
JacobiSum jacobi_sum(const CharacterTable& chi, int g1, int g2);

// For m = p and q = 1 mod p: phi(-1) chi^j(4) J_(j,j), j = 1..p-1, in Q(zeta_p).
std::vector<CyclotomicElement> jacobi_frobenius_eigenvalues(const CurveFamily& family, u64 q);

struct ScanConfig {
  CurveFamily family{5};
  u64 prime_bound = 0;
  unsigned depth = 1;
  unsigned worker_count = 1;
  std::optional<std::filesystem::path> cache_path;
  u64 enumeration_bound = kDefaultEnumerationBound;
};

struct ScanStats {
  std::size_t computed = 0;
  std::size_t reused = 0;
};

// Records in ascending q, delivered to sink. New records are added to the cache file.
ScanStats scan(const ScanConfig& config, const std::function<void(const TraceRecord&)>& sink);
std::vector<TraceRecord> scan(const ScanConfig& config, ScanStats* stats = nullptr);

}  // namespace satotate
