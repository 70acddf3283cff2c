#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "satotate/block_matrix.hpp"
#include "satotate/cyclotomic.hpp"
#include "satotate/errors.hpp"

using namespace satotate;

namespace {

int euler_phi(int n) {
  int r = n;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      r -= r / d;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

CyclotomicElement random_element(int level, std::mt19937_64& rng) {
  std::vector<Rational> c;
  for (int i = 0; i < level; ++i) c.emplace_back(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3);
  return CyclotomicElement(level, c);
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_polynomial(20) == std::vector<Int>{1, 0, -1, 0, 1, 0, -1, 0, 1});
  const auto p105 = cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);
  CHECK(p105[7] == -2);  // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
  for (int n = 1; n <= 92; ++n) CHECK(static_cast<int>(cyclotomic_polynomial(n).size()) == euler_phi(n) + 1);
}

TEST_CASE("roots of unity and the imaginary unit") {
  for (int p : {3, 5, 7, 11}) {
    const int n = 4 * p;
    const auto z = CyclotomicElement::zeta(n, 1);
    CyclotomicElement acc(n, Rational(1));
    for (int k = 1; k <= n; ++k) {
      acc = acc * z;
      CHECK(acc == CyclotomicElement::zeta(n, k));
      CHECK(acc.is_rational() == (k == n || k == n / 2));
    }
    CHECK(acc == CyclotomicElement(n, Rational(1)));
    const auto i = CyclotomicElement::imaginary_unit(n);
    CHECK(i * i == CyclotomicElement(n, Rational(-1)));
    CHECK(i == CyclotomicElement::zeta(n, p));
    CHECK(std::abs(z.embed() - std::polar(1.0, 2 * std::numbers::pi / n)) < 1e-12);
  }
  CHECK_THROWS(CyclotomicElement::imaginary_unit(10));
}

TEST_CASE("field arithmetic properties") {
  std::mt19937_64 rng(3);
  for (int n : {12, 20, 28, 44}) {
    for (int t = 0; t < 40; ++t) {
      const auto a = random_element(n, rng), b = random_element(n, rng), c = random_element(n, rng);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a - a == CyclotomicElement(n));
      CHECK(std::abs((a * b).embed() - a.embed() * b.embed()) < 1e-9);
      CHECK(std::abs(a.conj().embed() - std::conj(a.embed())) < 1e-9);
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == CyclotomicElement(n, Rational(1)));
        // the norm is the product of every conjugate
        CyclotomicElement prod(n, Rational(1));
        for (long s = 1; s < n; ++s) {
          if (std::gcd(s, static_cast<long>(n)) == 1) prod = prod * a.galois(s);
        }
        REQUIRE(prod.is_rational());
        CHECK(prod.rational_value() == a.norm());
      }
      for (long s : {1L, 3L, static_cast<long>(n) - 1}) {
        if (std::gcd(s, static_cast<long>(n)) != 1) continue;
        CHECK((a * b).galois(s) == a.galois(s) * b.galois(s));
      }
    }
  }
  CHECK_THROWS(CyclotomicElement(12).inverse());
}

TEST_CASE("Galois group composition") {
  const int n = 28;
  const GaloisElement s3(n, 3), s5(n, 5);
  const auto z = CyclotomicElement::zeta(n, 1);
  CHECK(s3.compose(s5).apply(z) == s3.apply(s5.apply(z)));
  CHECK(s3.power(6).t() == (3 * 3 * 3 * 3 * 3 * 3) % n);
  CHECK(GaloisElement::complex_conjugation(n).apply(z) == z.conj());
  CHECK_THROWS_AS(GaloisElement(n, 7), DomainError);
}

TEST_CASE("block codes and block matrices") {
  const int n = 20;
  for (const char* code : {"0", "I", "-I", "J", "-J", "iJ", "-iJ"}) {
    const auto b = block_from_code(code, n);
    REQUIRE(b);
    CHECK(block_code(*b) == code);
  }
  CHECK_FALSE(block_from_code("K", n));
  const auto j = Block::j(n);
  CHECK(j * j == -Block::identity(n));

  auto m = BlockUnitaryMatrix::identity(3, n);
  m.set_block(0, 0, Block::j(n));
  CHECK(m.is_unitary());
  CHECK(m.is_symplectic());
  CHECK(m.power(4).is_identity());
  const auto inv = m.inverse();
  REQUIRE(inv);
  CHECK((*inv * m).is_identity());
  CHECK(*inv == m.conj_transpose());

  BlockUnitaryMatrix singular(2, n);
  singular.set_block(0, 0, Block::identity(n));
  CHECK_FALSE(singular.inverse());
  CHECK(symplectic_form(2, n).is_symplectic());
}
