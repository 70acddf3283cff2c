#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satotate/block_matrix.hpp"
#include "satotate/family.hpp"
#include "satotate/laurent.hpp"

namespace satotate {

// Polynomial in T with LaurentPoly coefficients; coefficient(i) multiplies T^i.
class CharPoly {
 public:
  CharPoly(int degree, int nvars);
  CharPoly(std::vector<LaurentPoly> coefficients);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int nvars() const { return c_.front().nvars(); }
  const LaurentPoly& coefficient(int power) const { return c_.at(power); }
  void set_coefficient(int power, LaurentPoly v) { c_.at(power) = std::move(v); }
  // Coefficient of T^(degree - i).
  const LaurentPoly& a(int i) const { return c_.at(degree() - i); }
  const std::vector<LaurentPoly>& coefficients() const { return c_; }

  // c_0 = c_deg = 1 and c_i = conj(c_{deg-i}).
  bool is_unitary_self_reciprocal() const;

  CharPoly operator*(const CharPoly& o) const;
  bool operator==(const CharPoly& o) const { return c_ == o.c_; }
  bool operator!=(const CharPoly& o) const { return !(*this == o); }

  std::string to_string() const;

  // T^d + c: linear in T^d.
  static CharPoly binomial(int d, const LaurentPoly& c);
  // (T - x)
  static CharPoly linear(const LaurentPoly& x);
  static CharPoly from_integers(int nvars, const std::vector<long>& coeffs);  // constant term first
  CharPoly pow(int n) const;

 private:
  std::vector<LaurentPoly> c_;
};

// Sparse square matrix with LaurentPoly entries.
class SymbolicMatrix {
 public:
  SymbolicMatrix(int dimension, int nvars);

  int dimension() const { return n_; }
  int nvars() const { return nvars_; }
  LaurentPoly entry(int r, int c) const;
  void set(int r, int c, LaurentPoly v);
  const std::map<std::pair<int, int>, LaurentPoly>& entries() const { return e_; }

  SymbolicMatrix operator*(const SymbolicMatrix& o) const;
  // Every 2x2 block-row and block-column has exactly one nonzero block.
  bool is_block_monomial() const;

 private:
  int n_;
  int nvars_;
  std::map<std::pair<int, int>, LaurentPoly> e_;
};

// One cycle of the block permutation: det(T^L - P) = T^(2L) - trace T^L + det,
// P the product of the blocks along the cycle.
struct CycleFactor {
  int length = 0;
  LaurentPoly trace;
  LaurentPoly det;
};

// nullopt unless m is block monomial.
std::optional<std::vector<CycleFactor>> cycle_factors(const SymbolicMatrix& m);

// det(T - M) by cycles of the block permutation; Faddeev-LeVerrier otherwise.
CharPoly characteristic_polynomial(const SymbolicMatrix& m);
CharPoly characteristic_polynomial_leverrier(const SymbolicMatrix& m);

// diag(u_1, ~u_1, ..., u_g, ~u_g) for m = p; for m = 2p block k carries u_min(k, g+1-k).
SymbolicMatrix identity_component_element(const CurveFamily& family);

// gamma^k gamma'^j with the sign-adjusted gamma for m = 2p and gamma' = diag(J).
BlockUnitaryMatrix component_representative(const CurveFamily& family, int k, int j, int generator);
// U * representative.
SymbolicMatrix component_matrix(const CurveFamily& family, int k, int j, int generator);

CharPoly char_poly_component(const CurveFamily& family, int k, int j, int generator);
CharPoly char_poly_component(const CurveFamily& family, int k, int j);  // default generator

struct FormCheck {
  std::string statement;
  int k = 0;
  int j = 0;
  bool conjecture = false;
  bool passed = false;
  std::string detail;
};

std::vector<FormCheck> check_general_forms(const CurveFamily& family, int generator);
std::vector<FormCheck> check_general_forms(const CurveFamily& family);

// Numeric coefficients, constant term first. Throws unless every |u| = 1 within 1e-12.
std::vector<std::complex<double>> specialize(const CharPoly& cp,
                                             std::span<const std::complex<double>> units);

// Dense numeric matrix of m at the given units.
std::vector<std::vector<std::complex<double>>> specialize_matrix(
    const SymbolicMatrix& m, std::span<const std::complex<double>> units);

}  // namespace satotate
