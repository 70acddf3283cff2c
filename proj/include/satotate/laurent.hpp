#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satotate/numeric.hpp"

namespace satotate {

constexpr int kMaxVariables = 24;
using Exponents = std::array<std::int8_t, kMaxVariables>;

int total_degree(const Exponents& e);  // sum of |e_i|
// Higher total degree first, then lexicographically larger first.
bool canonical_before(const Exponents& a, const Exponents& b);

// Sparse Laurent polynomial in unit variables u_1..u_n; conj(u) = 1/u.
// Terms are kept in canonical order with no zero coefficients.
class LaurentPoly {
 public:
  using Term = std::pair<Exponents, Int>;

  explicit LaurentPoly(int nvars = 0);
  LaurentPoly(int nvars, const Int& constant);

  static LaurentPoly monomial(int nvars, const Exponents& e, const Int& coeff = 1);
  // u_index^power, index from 0.
  static LaurentPoly variable(int nvars, int index, int power = 1);
  static LaurentPoly from_terms(int nvars, std::vector<Term> terms);  // merges and sorts

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Int constant_term() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Int& c) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Exact division of every coefficient.
  LaurentPoly divide_exact(const Int& d) const;
  // Throws ResourceLimit when an intermediate exceeds term_budget terms.
  LaurentPoly pow(unsigned n, std::size_t term_budget = 0) const;
  LaurentPoly conj() const;

  std::complex<double> evaluate(std::span<const std::complex<double>> units) const;
  std::string to_string() const;

 private:
  void check_vars(const LaurentPoly& o) const;
  int nvars_;
  std::vector<Term> terms_;
};

// Multiplication with a growth guard; term_budget 0 disables it.
LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b, std::size_t term_budget);

// Constant term of a*b without forming the product.
Int constant_term_of_product(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace satotate
