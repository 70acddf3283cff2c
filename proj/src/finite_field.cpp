#include "satotate/finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "satotate/errors.hpp"

namespace satotate {

u64 pow_mod(u64 base, u64 exp, u64 q) {
  u64 r = 1 % q;
  base %= q;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<u64> sieve_primes(u64 bound, std::optional<Congruence> filter) {
  std::vector<u64> out;
  if (bound < 2) return out;
  if (filter && filter->modulus == 0) throw DomainError("congruence modulus must be positive");
  u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(bound)));
  while (root * root > bound) --root;
  while ((root + 1) * (root + 1) <= bound) ++root;

  std::vector<bool> small(root + 1, true);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small[j] = false;
  }

  const u64 segment = std::max<u64>(root, 1u << 15);
  std::vector<char> mark(segment);
  for (u64 lo = 2; lo <= bound; lo += segment) {
    u64 hi = std::min(bound, lo + segment - 1);
    std::fill(mark.begin(), mark.end(), 1);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 j = start; j <= hi; j += p) mark[j - lo] = 0;
    }
    for (u64 n = lo; n <= hi; ++n) {
      if (mark[n - lo] && (!filter || filter->matches(n))) out.push_back(n);
    }
    if (hi == bound) break;
  }
  return out;
}

PrimeField::PrimeField(u64 q) : q_(q) {
  if (q < 3 || !is_prime(q)) throw DomainError("not an odd prime: " + std::to_string(q));
}

u64 PrimeField::reduce(i64 x) const {
  i64 r = x % static_cast<i64>(q_);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(q_) : r);
}

u64 PrimeField::inv(u64 a) const {
  if (a % q_ == 0) throw DomainError("inverse of zero");
  return pow_mod(a, q_ - 2, q_);
}

int quadratic_character(u64 x, const PrimeField& field) {
  x %= field.modulus();
  if (x == 0) return 0;
  return field.pow(x, (field.modulus() - 1) / 2) == 1 ? 1 : -1;
}

u64 primitive_root(u64 q) {
  if (q == 2) return 1;
  if (!is_prime(q)) throw DomainError("not a prime: " + std::to_string(q));
  const auto factors = distinct_prime_factors(q - 1);
  for (u64 g = 2; g < q; ++g) {
    bool ok = true;
    for (u64 r : factors) {
      if (pow_mod(g, (q - 1) / r, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InternalError("no primitive root found");
}

SquareTable::SquareTable(const PrimeField& field) : bits_(field.modulus() / 64 + 1, 0) {
  const u64 q = field.modulus();
  const u64 g = primitive_root(q);
  const u64 g2 = field.mul(g, g);
  u64 x = 1;
  for (u64 e = 0; e < (q - 1) / 2; ++e) {
    bits_[x >> 6] |= u64{1} << (x & 63);
    x = field.mul(x, g2);
  }
}

DiscreteLogTable::DiscreteLogTable(u64 q) : q_(q), generator_(primitive_root(q)), log_(q, 0) {
  if (q < 3) throw DomainError("discrete logs need an odd prime");
  if (q > 0xffffffffULL) throw BoundExceeded("discrete log table too large");
  u64 x = 1;
  for (u64 e = 0; e < q - 1; ++e) {
    log_[x] = static_cast<std::uint32_t>(e);
    x = mul_mod(x, generator_, q);
  }
}

CharacterTable::CharacterTable(std::shared_ptr<const DiscreteLogTable> logs, u64 order)
    : logs_(std::move(logs)), d_(order) {
  if (d_ == 0 || (logs_->prime() - 1) % d_ != 0) {
    throw DomainError("character order " + std::to_string(d_) + " does not divide q-1");
  }
}

CharacterTable::CharacterTable(u64 q, u64 order)
    : CharacterTable(std::make_shared<const DiscreteLogTable>(q), order) {}

// ---- polynomials over F_q, constant term first ----

namespace {

using Poly = std::vector<u64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, const PrimeField& f) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 lead_inv = f.inv(m.back());
  while (a.size() > dm) {
    const u64 c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, const PrimeField& f) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return poly_mod(std::move(r), m, f);
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, const PrimeField& f) {
  Poly r{1};
  base = poly_mod(std::move(base), m, f);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, f);
    base = poly_mulmod(base, base, m, f);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, const PrimeField& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, const PrimeField& f) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  trim(a);
  return a;
}

// Rabin's test.
bool is_irreducible(const Poly& m, const PrimeField& f) {
  const std::size_t k = m.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  const Poly x{0, 1};
  // x^(q^i) mod m for i = 0..k
  std::vector<Poly> frob{poly_mod(x, m, f)};
  for (std::size_t i = 1; i <= k; ++i) frob.push_back(poly_powmod(frob.back(), f.modulus(), m, f));
  if (!poly_sub(frob[k], x, f).empty()) return false;
  for (u64 r : distinct_prime_factors(k)) {
    Poly g = poly_gcd(m, poly_sub(frob[k / r], x, f), f);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

ExtField ExtField::with_degree(u64 q, unsigned k) {
  if (k == 0) throw DomainError("extension degree must be at least 1");
  PrimeField f(q);
  if (k == 1) return ExtField(q, {0, 1});
  // Binomials x^k + b first, then trinomials x^k + a x^j + b with j ascending.
  auto candidate = [&](unsigned j, u64 a, u64 b) {
    Poly m(k + 1, 0);
    m[k] = 1;
    m[0] = b;
    m[j] = f.add(m[j], a);
    return m;
  };
  for (u64 b = 1; b < q; ++b) {
    Poly m = candidate(0, 0, b);
    if (is_irreducible(m, f)) return ExtField(q, std::move(m));
  }
  for (unsigned j = 1; j < k; ++j) {
    for (u64 b = 1; b < q; ++b) {
      for (u64 a = 1; a < q; ++a) {
        Poly m = candidate(j, a, b);
        if (is_irreducible(m, f)) return ExtField(q, std::move(m));
      }
    }
  }
  throw InternalError("no sparse irreducible modulus found");
}

ExtField::ExtField(u64 q, std::vector<u64> modulus)
    : base_(q), k_(static_cast<unsigned>(modulus.size()) - 1), modulus_(std::move(modulus)) {
  if (modulus_.size() < 2 || modulus_.back() != 1) throw DomainError("modulus must be monic");
  for (u64& c : modulus_) c %= q;
  if (!is_irreducible(modulus_, base_)) throw DomainError("modulus is not irreducible");
}

u64 ExtField::size() const {
  u64 s = 1;
  for (unsigned i = 0; i < k_; ++i) {
    if (s > ~u64{0} / characteristic()) throw BoundExceeded("field size overflows 64 bits");
    s *= characteristic();
  }
  return s;
}

ExtField::Element ExtField::from_base(u64 c) const {
  Element e(k_, 0);
  e[0] = c % characteristic();
  return e;
}

ExtField::Element ExtField::add(const Element& a, const Element& b) const {
  Element r(k_);
  for (unsigned i = 0; i < k_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

ExtField::Element ExtField::sub(const Element& a, const Element& b) const {
  Element r(k_);
  for (unsigned i = 0; i < k_; ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

ExtField::Element ExtField::mul(const Element& a, const Element& b) const {
  const u64 q = characteristic();
  // Accumulate unreduced products; k and q are small enough in practice, reduce when needed.
  std::vector<unsigned __int128> acc(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
  }
  std::vector<u64> r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i] % q);
  for (std::size_t d = r.size(); d-- > k_;) {
    const u64 c = r[d];
    if (c == 0) continue;
    r[d] = 0;
    // x^d = x^(d-k) * x^k, x^k = -(lower terms of modulus)
    for (unsigned i = 0; i < k_; ++i) {
      if (modulus_[i] != 0) r[d - k_ + i] = base_.sub(r[d - k_ + i], base_.mul(c, modulus_[i]));
    }
  }
  r.resize(k_);
  return r;
}

ExtField::Element ExtField::pow(Element a, u64 e) const {
  Element r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 ExtField::encode(const Element& a) const {
  u64 idx = 0;
  for (unsigned i = k_; i-- > 0;) idx = idx * characteristic() + a[i];
  return idx;
}

ExtField::Element ExtField::decode(u64 index) const {
  Element e(k_);
  for (unsigned i = 0; i < k_; ++i) {
    e[i] = index % characteristic();
    index /= characteristic();
  }
  return e;
}

ExtField::Element ExtField::primitive_element() const {
  const u64 order = size() - 1;
  const auto factors = distinct_prime_factors(order);
  const Element unit = one();
  for (u64 idx = 1; idx <= order; ++idx) {
    Element c = decode(idx);
    bool ok = true;
    for (u64 r : factors) {
      if (pow(c, order / r) == unit) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  throw InternalError("no primitive element found");
}

ExtFieldElementRange::iterator::iterator(const ExtField* field, u64 index)
    : field_(field), index_(index), current_(field->zero()) {
  if (index_ < field_->size()) current_ = field_->decode(index_);
}

ExtFieldElementRange::iterator& ExtFieldElementRange::iterator::operator++() {
  ++index_;
  // odometer increment
  const u64 q = field_->characteristic();
  for (auto& c : current_) {
    if (++c < q) break;
    c = 0;
  }
  return *this;
}

ExtFieldElementRange ext_point_count_support(const ExtField& field, u64 bound) {
  u64 size = 0;
  try {
    size = field.size();
  } catch (const BoundExceeded&) {
    throw BoundExceeded("q^k exceeds the enumeration bound");
  }
  if (size > bound) {
    throw BoundExceeded("q^k = " + std::to_string(size) + " exceeds the enumeration bound " +
                        std::to_string(bound));
  }
  return ExtFieldElementRange(field);
}

}  // namespace satotate
