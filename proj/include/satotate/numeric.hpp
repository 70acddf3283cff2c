#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace satotate {

using Int = mpz_class;
using Rational = mpq_class;

Int binomial(unsigned long n, unsigned long k);
Int central_binomial(unsigned long n);  // C(n, n/2), 0 for odd n

std::string to_string(const Int& v);
// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& v);
Rational parse_rational(const std::string& text);

}  // namespace satotate
