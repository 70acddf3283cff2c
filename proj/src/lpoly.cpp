#include "satotate/lpoly.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "satotate/errors.hpp"
#include "satotate/trace_cache.hpp"

namespace satotate {

namespace {

void require_good(const CurveFamily& family, u64 q) {
  if (!is_good_prime(family, q)) {
    throw DomainError("q=" + std::to_string(q) + " is a bad prime for m=" +
                      std::to_string(family.m()));
  }
}

// Multiplication by a fixed element as a k x k matrix over F_q, applied in place.
class MulByElement {
 public:
  MulByElement(const ExtField& field, const ExtField::Element& h) : f_(field.base()), k_(field.degree()) {
    cols_.reserve(k_);
    ExtField::Element basis = field.zero();
    for (unsigned j = 0; j < k_; ++j) {
      std::fill(basis.begin(), basis.end(), 0);
      basis[j] = 1;
      cols_.push_back(field.mul(basis, h));
    }
    acc_.assign(k_, 0);
  }

  void apply(ExtField::Element& x) {
    const u64 q = f_.modulus();
    auto& acc = acc_;
    std::fill(acc.begin(), acc.end(), 0);
    for (unsigned j = 0; j < k_; ++j) {
      if (x[j] == 0) continue;
      const auto& col = cols_[j];
      for (unsigned i = 0; i < k_; ++i) acc[i] += static_cast<unsigned __int128>(x[j]) * col[i];
    }
    for (unsigned i = 0; i < k_; ++i) x[i] = static_cast<u64>(acc[i] % q);
  }

 private:
  const PrimeField& f_;
  unsigned k_;
  std::vector<ExtField::Element> cols_;
  std::vector<unsigned __int128> acc_;
};

}  // namespace

bool is_good_prime(const CurveFamily& family, u64 q) {
  return q > 2 && is_prime(q) && family.m() % q != 0;
}

i64 affine_count(const CurveFamily& family, const PrimeField& field) {
  const u64 q = field.modulus();
  require_good(family, q);
  const u64 m = static_cast<u64>(family.m());
  const u64 d = gcd_u64(m, q - 1);
  const SquareTable squares(field);
  const u64 g = primitive_root(q);
  const u64 h = field.pow(g, d);
  // image of x -> x^m on F_q^x is the subgroup generated by g^d
  i64 sum = 0;
  u64 u = 1;
  for (u64 e = 0; e < (q - 1) / d; ++e) {
    sum += squares.character(field.sub(u, 1));
    u = field.mul(u, h);
  }
  const i64 at_zero = squares.character(q - 1);
  return static_cast<i64>(q) + at_zero + static_cast<i64>(d) * sum;
}

i64 affine_count(const CurveFamily& family, const ExtField& field) {
  require_good(family, field.characteristic());
  if (field.degree() == 1) return affine_count(family, field.base());
  const u64 size = field.size();
  const u64 m = static_cast<u64>(family.m());
  const u64 d = gcd_u64(m, size - 1);
  const ExtField::Element g = field.primitive_element();

  std::vector<u64> bits(size / 64 + 1, 0);
  {
    MulByElement step(field, field.mul(g, g));
    ExtField::Element x = field.one();
    for (u64 e = 0; e < (size - 1) / 2; ++e) {
      const u64 idx = field.encode(x);
      bits[idx >> 6] |= u64{1} << (idx & 63);
      step.apply(x);
    }
  }
  auto character = [&](const ExtField::Element& x) -> i64 {
    const u64 idx = field.encode(x);
    if (idx == 0) return 0;
    return ((bits[idx >> 6] >> (idx & 63)) & 1) ? 1 : -1;
  };

  const PrimeField& base = field.base();
  MulByElement step(field, field.pow(g, d));
  ExtField::Element u = field.one();
  ExtField::Element shifted = u;
  i64 sum = 0;
  for (u64 e = 0; e < (size - 1) / d; ++e) {
    shifted = u;
    shifted[0] = base.sub(shifted[0], 1);
    sum += character(shifted);
    step.apply(u);
  }
  const i64 at_zero = character(field.from_base(base.modulus() - 1));
  return static_cast<i64>(size) + at_zero + static_cast<i64>(d) * sum;
}

i64 point_count(const CurveFamily& family, const PrimeField& field) {
  return affine_count(family, field) + family.points_at_infinity();
}

i64 trace_a1(const CurveFamily& family, u64 q) {
  require_good(family, q);
  const PrimeField field(q);
  return static_cast<i64>(q) + 1 - point_count(family, field);
}

unsigned feasible_depth(u64 q, unsigned depth, u64 enumeration_bound) {
  unsigned j = 0;
  unsigned __int128 size = 1;
  while (j < depth) {
    size *= q;
    if (size > enumeration_bound && j >= 1) break;
    ++j;
  }
  return j;
}

std::vector<i64> lpoly_coeffs(const CurveFamily& family, u64 q, unsigned depth,
                              u64 enumeration_bound) {
  require_good(family, q);
  if (depth < 1 || static_cast<int>(depth) > family.genus()) {
    throw DomainError("depth must be in 1..g (g=" + std::to_string(family.genus()) + ")");
  }
  // s_j = q^j + 1 - #C(F_{q^j})
  std::vector<Int> s(depth + 1);
  Int qj = 1;
  for (unsigned j = 1; j <= depth; ++j) {
    qj *= static_cast<unsigned long>(q);
    i64 affine;
    if (j == 1) {
      affine = affine_count(family, PrimeField(q));
    } else {
      if (qj > Int(static_cast<unsigned long>(enumeration_bound))) {
        throw BoundExceeded("q^" + std::to_string(j) + " exceeds the enumeration bound");
      }
      affine = affine_count(family, ExtField::with_degree(q, j));
    }
    s[j] = qj + 1 - Int(static_cast<long>(affine + family.points_at_infinity()));
  }
  // Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
  std::vector<Int> e(depth + 1);
  e[0] = 1;
  for (unsigned k = 1; k <= depth; ++k) {
    Int acc = 0;
    for (unsigned i = 1; i <= k; ++i) {
      const Int term = e[k - i] * s[i];
      if (i % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    if (acc % k != 0) throw InternalError("Newton identity produced a non-integer coefficient");
    e[k] = acc / k;
  }
  std::vector<i64> out;
  for (unsigned k = 1; k <= depth; ++k) {
    if (!e[k].fits_slong_p()) throw InternalError("L-polynomial coefficient overflows 64 bits");
    out.push_back(e[k].get_si());
  }
  return out;
}

std::vector<Int> full_lpoly(const CurveFamily& family, u64 q, const std::vector<i64>& e) {
  const int g = family.genus();
  if (static_cast<int>(e.size()) < g) throw DomainError("need e_1..e_g for the full polynomial");
  std::vector<Int> c(2 * g + 1);
  c[0] = 1;
  for (int i = 1; i <= g; ++i) c[i] = (i % 2 ? -1 : 1) * Int(static_cast<long>(e[i - 1]));
  Int qp = 1;
  for (int i = g - 1; i >= 0; --i) {
    qp *= static_cast<unsigned long>(q);
    c[2 * g - i] = qp * c[i];
  }
  return c;
}

JacobiSum jacobi_sum(const CharacterTable& chi, int g1, int g2) {
  const int p = static_cast<int>(chi.order());
  auto red = [p](long x) { return static_cast<int>(((x % p) + p) % p); };
  if (red(g1) == 0 || red(g2) == 0 || red(g1 + g2) == 0) {
    throw DomainError("inadmissible exponent pair (" + std::to_string(g1) + "," +
                      std::to_string(g2) + ") mod " + std::to_string(p));
  }
  const u64 q = chi.prime();
  std::vector<long> counts(p, 0);
  for (u64 x = 2; x < q; ++x) {
    const long e = static_cast<long>(g1) * static_cast<long>(chi.value(x)) +
                   static_cast<long>(g2) * static_cast<long>(chi.value(q + 1 - x));
    ++counts[red(e)];
  }
  std::vector<Rational> c(p);
  for (int k = 0; k < p; ++k) c[k] = -counts[k];
  return JacobiSum{CyclotomicElement(p, std::move(c)), q, red(g1), red(g2)};
}

JacobiSum jacobi_sum(u64 q, int p, int g1, int g2) {
  if (q % static_cast<u64>(p) != 1) {
    throw DomainError("q=" + std::to_string(q) + " is not 1 mod " + std::to_string(p));
  }
  return jacobi_sum(CharacterTable(q, static_cast<u64>(p)), g1, g2);
}

std::vector<CyclotomicElement> jacobi_frobenius_eigenvalues(const CurveFamily& family, u64 q) {
  if (family.is_even()) throw DomainError("Jacobi-sum eigenvalues implemented for m = p only");
  const int p = family.p();
  if (q % static_cast<u64>(p) != 1) throw DomainError("need q = 1 mod p");
  const CharacterTable chi(q, static_cast<u64>(p));
  const int sign = ((q - 1) / 2) % 2 == 0 ? 1 : -1;  // phi(-1)
  const long chi4 = static_cast<long>(chi.value(4 % q));
  std::vector<CyclotomicElement> out;
  for (int j = 1; j < p; ++j) {
    const auto js = jacobi_sum(chi, j, j);
    const CyclotomicElement chi4_j = CyclotomicElement::zeta(p, chi4 * j);
    out.push_back(chi4_j * js.value * CyclotomicElement(p, Rational(sign)));
  }
  return out;
}

ScanStats scan(const ScanConfig& config, const std::function<void(const TraceRecord&)>& sink) {
  const CurveFamily& family = config.family;
  if (config.depth < 1 || static_cast<int>(config.depth) > family.genus()) {
    throw DomainError("depth must be in 1..g (g=" + std::to_string(family.genus()) + ")");
  }
  std::optional<TraceCache> cache;
  if (config.cache_path) cache = TraceCache::load(*config.cache_path, family.m());

  std::vector<u64> primes;
  for (u64 q : sieve_primes(config.prime_bound)) {
    if (is_good_prime(family, q)) primes.push_back(q);
  }

  ScanStats stats;
  const unsigned workers = std::max(1u, config.worker_count);
  constexpr std::size_t kBatch = 512;
  for (std::size_t lo = 0; lo < primes.size(); lo += kBatch) {
    const std::size_t hi = std::min(primes.size(), lo + kBatch);
    std::vector<TraceRecord> out(hi - lo);
    std::vector<char> fresh(hi - lo, 0);
    std::atomic<std::size_t> next{lo};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
      for (std::size_t idx = next++; idx < hi; idx = next++) {
        try {
          const u64 q = primes[idx];
          const unsigned want = feasible_depth(q, config.depth, config.enumeration_bound);
          if (cache) {
            if (const TraceRecord* r = cache->find(q); r && r->deep.size() + 1 >= want) {
              TraceRecord t = *r;
              t.deep.resize(want - 1);
              out[idx - lo] = std::move(t);
              continue;
            }
          }
          const auto e = lpoly_coeffs(family, q, want, config.enumeration_bound);
          out[idx - lo] = TraceRecord{q, e[0], std::vector<i64>(e.begin() + 1, e.end())};
          fresh[idx - lo] = 1;
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (fresh[i]) {
        ++stats.computed;
        if (cache) cache->insert(out[i]);
      } else {
        ++stats.reused;
      }
      sink(out[i]);
    }
  }
  if (cache && stats.computed > 0) cache->save();
  return stats;
}

std::vector<TraceRecord> scan(const ScanConfig& config, ScanStats* stats) {
  std::vector<TraceRecord> out;
  const ScanStats s = scan(config, [&](const TraceRecord& r) { out.push_back(r); });
  if (stats) *stats = s;
  return out;
}

}  // namespace satotate
