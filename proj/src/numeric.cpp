#include "satotate/numeric.hpp"

#include "satotate/errors.hpp"

namespace satotate {

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int central_binomial(unsigned long n) {
  if (n % 2 != 0) return 0;
  return binomial(n, n / 2);
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw DomainError("not a rational: " + text);
  r.canonicalize();
  return r;
}

}  // namespace satotate
