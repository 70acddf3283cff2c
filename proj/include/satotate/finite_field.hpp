#pragma once

#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <vector>

namespace satotate {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mul_mod(u64 a, u64 b, u64 q) {
  if (q <= 0xffffffffULL) return a * b % q;
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q);
}
u64 pow_mod(u64 base, u64 exp, u64 q);
u64 gcd_u64(u64 a, u64 b);

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);
std::vector<u64> distinct_prime_factors(u64 n);

struct Congruence {
  u64 residue = 0;
  u64 modulus = 1;
  bool matches(u64 n) const { return n % modulus == residue % modulus; }
};

// Ascending primes <= bound, optionally filtered. Segmented.
std::vector<u64> sieve_primes(u64 bound, std::optional<Congruence> filter = std::nullopt);

class PrimeField {
 public:
  explicit PrimeField(u64 q);

  u64 modulus() const { return q_; }
  u64 reduce(i64 x) const;
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= q_ ? s - q_ : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : q_ - a; }
  u64 mul(u64 a, u64 b) const { return mul_mod(a, b, q_); }
  u64 pow(u64 a, u64 e) const { return pow_mod(a, e, q_); }
  u64 inv(u64 a) const;  // a != 0

 private:
  u64 q_;
};

// Euler criterion.
int quadratic_character(u64 x, const PrimeField& field);

// Smallest positive primitive root.
u64 primitive_root(u64 q);

// Square bitset over F_q, built by walking even powers of a primitive root.
class SquareTable {
 public:
  explicit SquareTable(const PrimeField& field);
  bool is_square(u64 x) const { return (bits_[x >> 6] >> (x & 63)) & 1; }
  int character(u64 x) const { return x == 0 ? 0 : (is_square(x) ? 1 : -1); }

 private:
  std::vector<u64> bits_;
};

// Discrete logarithms base the smallest primitive root. Shared by character tables of every order.
class DiscreteLogTable {
 public:
  explicit DiscreteLogTable(u64 q);
  u64 prime() const { return q_; }
  u64 generator() const { return generator_; }
  u64 log(u64 x) const { return log_[x]; }  // x in [1, q)

 private:
  u64 q_;
  u64 generator_;
  std::vector<std::uint32_t> log_;
};

// Character of order d on F_q^x, values as residues mod d (exponent of zeta_d).
class CharacterTable {
 public:
  CharacterTable(std::shared_ptr<const DiscreteLogTable> logs, u64 order);
  CharacterTable(u64 q, u64 order);

  u64 prime() const { return logs_->prime(); }
  u64 order() const { return d_; }
  u64 generator() const { return logs_->generator(); }
  // chi(x) = zeta_d^(log x); x must be nonzero mod q.
  u64 value(u64 x) const { return logs_->log(x % prime()) % d_; }

 private:
  std::shared_ptr<const DiscreteLogTable> logs_;
  u64 d_;
};

// F_{q^k} in a dense polynomial basis.
class ExtField {
 public:
  using Element = std::vector<u64>;  // k coefficients, constant term first

  // Deterministic search for a sparse irreducible modulus of degree k.
  static ExtField with_degree(u64 q, unsigned k);
  // modulus is monic of degree k, constant term first; rejected unless irreducible.
  ExtField(u64 q, std::vector<u64> modulus);

  u64 characteristic() const { return base_.modulus(); }
  unsigned degree() const { return k_; }
  const PrimeField& base() const { return base_; }
  const std::vector<u64>& modulus() const { return modulus_; }
  // q^k; throws BoundExceeded on 64-bit overflow.
  u64 size() const;

  Element zero() const { return Element(k_, 0); }
  Element one() const { return from_base(1); }
  Element from_base(u64 c) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element pow(Element a, u64 e) const;

  // Base-q digits, constant term least significant.
  u64 encode(const Element& a) const;
  Element decode(u64 index) const;

  // Generator of the multiplicative group.
  Element primitive_element() const;

 private:
  PrimeField base_;
  unsigned k_;
  std::vector<u64> modulus_;
};

constexpr u64 kDefaultEnumerationBound = u64{1} << 26;

// All elements of an extension field, in encode() order.
class ExtFieldElementRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = ExtField::Element;
    using difference_type = std::ptrdiff_t;
    using pointer = const value_type*;
    using reference = const value_type&;

    iterator(const ExtField* field, u64 index);
    reference operator*() const { return current_; }
    iterator& operator++();
    bool operator==(const iterator& o) const { return index_ == o.index_; }
    bool operator!=(const iterator& o) const { return index_ != o.index_; }

   private:
    const ExtField* field_;
    u64 index_;
    ExtField::Element current_;
  };

  explicit ExtFieldElementRange(const ExtField& field) : field_(&field) {}
  iterator begin() const { return iterator(field_, 0); }
  iterator end() const { return iterator(field_, field_->size()); }
  u64 size() const { return field_->size(); }

 private:
  const ExtField* field_;
};

// Throws BoundExceeded when q^k > bound.
ExtFieldElementRange ext_point_count_support(const ExtField& field,
                                             u64 bound = kDefaultEnumerationBound);

}  // namespace satotate
