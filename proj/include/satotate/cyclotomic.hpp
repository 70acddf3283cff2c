#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "satotate/numeric.hpp"

namespace satotate {

// Q(zeta_N) as Q[x]/Phi_N. Instances are shared per level.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(int level);

  int level() const { return level_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  const std::vector<Int>& modulus() const { return phi_; }  // monic, constant term first

  // Reduce a coefficient vector of any length modulo Phi_N, in place.
  void reduce(std::vector<Rational>& c) const;

  explicit CyclotomicField(int level);

 private:
  int level_;
  std::vector<Int> phi_;
};

std::vector<Int> cyclotomic_polynomial(int n);

class CyclotomicElement {
 public:
  explicit CyclotomicElement(int level);
  CyclotomicElement(int level, const Rational& value);
  CyclotomicElement(int level, std::vector<Rational> coefficients);  // reduced on construction

  static CyclotomicElement zeta(int level, long k);  // zeta_N^k
  static CyclotomicElement imaginary_unit(int level);

  int level() const { return field_->level(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  CyclotomicElement operator+(const CyclotomicElement& o) const;
  CyclotomicElement operator-(const CyclotomicElement& o) const;
  CyclotomicElement operator-() const;
  CyclotomicElement operator*(const CyclotomicElement& o) const;
  CyclotomicElement& operator+=(const CyclotomicElement& o);
  CyclotomicElement& operator-=(const CyclotomicElement& o);
  bool operator==(const CyclotomicElement& o) const;
  bool operator!=(const CyclotomicElement& o) const { return !(*this == o); }

  CyclotomicElement conj() const { return galois(-1); }
  // zeta_N -> zeta_N^t, gcd(t, N) = 1.
  CyclotomicElement galois(long t) const;
  // Product of the nontrivial conjugates over the norm. Throws on zero.
  CyclotomicElement inverse() const;
  Rational norm() const;

  // zeta_N = exp(2 pi i / N)
  std::complex<double> embed() const;
  std::string to_string() const;

 private:
  void check_level(const CyclotomicElement& o) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> c_;  // length degree()
};

class GaloisElement {
 public:
  GaloisElement(int level, long t);
  static GaloisElement identity(int level) { return GaloisElement(level, 1); }
  static GaloisElement complex_conjugation(int level) { return GaloisElement(level, -1); }

  int level() const { return level_; }
  long t() const { return t_; }
  CyclotomicElement apply(const CyclotomicElement& e) const;
  GaloisElement compose(const GaloisElement& o) const;  // this after o
  GaloisElement power(int n) const;
  bool operator==(const GaloisElement& o) const { return level_ == o.level_ && t_ == o.t_; }

 private:
  int level_;
  long t_;  // in [1, N)
};

}  // namespace satotate
