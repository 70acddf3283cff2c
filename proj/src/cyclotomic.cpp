#include "satotate/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "satotate/errors.hpp"

namespace satotate {

namespace {

long mod_level(long k, int n) {
  long r = k % n;
  return r < 0 ? r + n : r;
}

// exact quotient of integer polynomials, divisor monic
std::vector<Int> divide_monic(std::vector<Int> a, const std::vector<Int>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<Int> q(a.size() - db, 0);
  for (std::size_t d = a.size(); d-- > db;) {
    const Int c = a[d];
    if (c == 0) continue;
    q[d - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[d - db + i] -= c * b[i];
  }
  return q;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(int n) {
  if (n < 1) throw DomainError("cyclotomic level must be positive");
  static std::mutex mu;
  static std::map<int, std::vector<Int>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  std::vector<Int> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) num = divide_monic(std::move(num), cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(n, num);
  return num;
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int level) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CyclotomicField>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(level);
  if (it != registry.end()) return it->second;
  auto f = std::make_shared<const CyclotomicField>(level);
  registry.emplace(level, f);
  return f;
}

CyclotomicField::CyclotomicField(int level) : level_(level), phi_(cyclotomic_polynomial(level)) {}

void CyclotomicField::reduce(std::vector<Rational>& c) const {
  const std::size_t deg = phi_.size() - 1;
  for (std::size_t d = c.size(); d-- > deg;) {
    if (c[d] == 0) continue;
    const Rational coef = c[d];
    for (std::size_t i = 0; i < deg; ++i) {
      if (phi_[i] != 0) c[d - deg + i] -= coef * phi_[i];
    }
    c[d] = 0;
  }
  c.resize(deg, Rational(0));
}

CyclotomicElement::CyclotomicElement(int level)
    : field_(CyclotomicField::get(level)), c_(field_->degree(), Rational(0)) {}

CyclotomicElement::CyclotomicElement(int level, const Rational& value) : CyclotomicElement(level) {
  c_[0] = value;
  c_[0].canonicalize();
}

CyclotomicElement::CyclotomicElement(int level, std::vector<Rational> coefficients)
    : field_(CyclotomicField::get(level)), c_(std::move(coefficients)) {
  for (auto& x : c_) x.canonicalize();
  field_->reduce(c_);
}

CyclotomicElement CyclotomicElement::zeta(int level, long k) {
  std::vector<Rational> c(level, Rational(0));
  c[mod_level(k, level)] = 1;
  return CyclotomicElement(level, std::move(c));
}

CyclotomicElement CyclotomicElement::imaginary_unit(int level) {
  if (level % 4 != 0) throw DomainError("i is not in Q(zeta_" + std::to_string(level) + ")");
  return zeta(level, level / 4);
}

bool CyclotomicElement::is_zero() const {
  for (const auto& x : c_) {
    if (x != 0) return false;
  }
  return true;
}

bool CyclotomicElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

Rational CyclotomicElement::rational_value() const {
  if (!is_rational()) throw DomainError("cyclotomic element is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

void CyclotomicElement::check_level(const CyclotomicElement& o) const {
  if (level() != o.level()) {
    throw DomainError("cyclotomic level mismatch: " + std::to_string(level()) + " vs " +
                      std::to_string(o.level()));
  }
}

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement& o) const {
  CyclotomicElement r = *this;
  r += o;
  return r;
}

CyclotomicElement CyclotomicElement::operator-(const CyclotomicElement& o) const {
  CyclotomicElement r = *this;
  r -= o;
  return r;
}

CyclotomicElement CyclotomicElement::operator-() const {
  CyclotomicElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicElement& CyclotomicElement::operator+=(const CyclotomicElement& o) {
  check_level(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicElement& CyclotomicElement::operator-=(const CyclotomicElement& o) {
  check_level(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
  check_level(o);
  const std::size_t n = c_.size();
  std::vector<Rational> prod(2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
  }
  return CyclotomicElement(level(), std::move(prod));
}

bool CyclotomicElement::operator==(const CyclotomicElement& o) const {
  return level() == o.level() && c_ == o.c_;
}

CyclotomicElement CyclotomicElement::galois(long t) const {
  const int n = level();
  if (std::gcd(mod_level(t, n), static_cast<long>(n)) != 1) {
    throw DomainError("Galois exponent " + std::to_string(t) + " is not a unit mod " +
                      std::to_string(n));
  }
  std::vector<Rational> r(n, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] != 0) r[mod_level(t * static_cast<long>(k), n)] += c_[k];
  }
  return CyclotomicElement(n, std::move(r));
}

Rational CyclotomicElement::norm() const {
  CyclotomicElement acc(level(), Rational(1));
  for (long t = 1; t < level(); ++t) {
    if (std::gcd(t, static_cast<long>(level())) == 1) acc = acc * galois(t);
  }
  return acc.rational_value();
}

CyclotomicElement CyclotomicElement::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero cyclotomic element");
  CyclotomicElement others(level(), Rational(1));
  for (long t = 2; t < level(); ++t) {
    if (std::gcd(t, static_cast<long>(level())) == 1) others = others * galois(t);
  }
  if (level() <= 2) return CyclotomicElement(level(), Rational(1) / rational_value());
  const Rational n = (*this * others).rational_value();
  Rational inv_n = Rational(1) / n;
  for (auto& x : others.c_) x *= inv_n;
  return others;
}

std::complex<double> CyclotomicElement::embed() const {
  std::complex<double> z = 0;
  const double step = 2.0 * M_PI / level();
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] != 0) z += c_[k].get_d() * std::polar(1.0, step * static_cast<double>(k));
  }
  return z;
}

std::string CyclotomicElement::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << satotate::to_string(c_[k]);
    if (k > 0) out << "*z" << level() << "^" << k;
  }
  if (first) out << "0";
  return out.str();
}

GaloisElement::GaloisElement(int level, long t) : level_(level), t_(mod_level(t, level)) {
  if (level < 1 || std::gcd(t_, static_cast<long>(level)) != 1) {
    throw DomainError("Galois exponent " + std::to_string(t) + " is not a unit mod " +
                      std::to_string(level));
  }
}

CyclotomicElement GaloisElement::apply(const CyclotomicElement& e) const {
  if (e.level() != level_) {
    throw DomainError("Galois element of level " + std::to_string(level_) +
                      " applied to element of level " + std::to_string(e.level()));
  }
  return e.galois(t_);
}

GaloisElement GaloisElement::compose(const GaloisElement& o) const {
  if (o.level_ != level_) throw DomainError("Galois level mismatch");
  return GaloisElement(level_, t_ * o.t_ % level_);
}

GaloisElement GaloisElement::power(int n) const {
  GaloisElement r = identity(level_);
  for (int i = 0; i < n; ++i) r = r.compose(*this);
  return r;
}

}  // namespace satotate
