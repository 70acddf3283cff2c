#include "satotate/laurent.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <unordered_map>

#include "satotate/errors.hpp"

namespace satotate {

namespace {

struct ExponentHash {
  std::size_t operator()(const Exponents& e) const {
    std::uint64_t w[3];
    static_assert(sizeof(w) == sizeof(Exponents));
    std::memcpy(w, e.data(), sizeof(w));
    std::uint64_t h = w[0] * 0x9e3779b97f4a7c15ULL;
    h ^= (w[1] + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2));
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= (w[2] + 0x94d049bb133111ebULL + (h << 6) + (h >> 2));
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
  }
};

using TermMap = std::unordered_map<Exponents, Int, ExponentHash>;

Exponents add_exponents(const Exponents& a, const Exponents& b, int n) {
  Exponents r{};
  for (int i = 0; i < n; ++i) {
    const int s = a[i] + b[i];
    if (s > 127 || s < -127) throw ResourceLimit("Laurent exponent out of range");
    r[i] = static_cast<std::int8_t>(s);
  }
  return r;
}

Exponents negate(const Exponents& a, int n) {
  Exponents r{};
  for (int i = 0; i < n; ++i) r[i] = static_cast<std::int8_t>(-a[i]);
  return r;
}

bool is_zero_exponent(const Exponents& e) {
  for (auto x : e) {
    if (x) return false;
  }
  return true;
}

struct CanonicalLess {
  bool operator()(const LaurentPoly::Term& a, const LaurentPoly::Term& b) const {
    return canonical_before(a.first, b.first);
  }
};

}  // namespace

int total_degree(const Exponents& e) {
  int d = 0;
  for (auto x : e) d += x < 0 ? -x : x;
  return d;
}

bool canonical_before(const Exponents& a, const Exponents& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxVariables) {
    throw DomainError("Laurent polynomials support at most " + std::to_string(kMaxVariables) +
                      " variables");
  }
}

LaurentPoly::LaurentPoly(int nvars, const Int& constant) : LaurentPoly(nvars) {
  if (constant != 0) terms_.emplace_back(Exponents{}, constant);
}

LaurentPoly LaurentPoly::monomial(int nvars, const Exponents& e, const Int& coeff) {
  LaurentPoly p(nvars);
  for (int i = nvars; i < kMaxVariables; ++i) {
    if (e[i]) throw DomainError("exponent beyond variable count");
  }
  if (coeff != 0) p.terms_.emplace_back(e, coeff);
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int index, int power) {
  if (index < 0 || index >= nvars) throw DomainError("variable index out of range");
  Exponents e{};
  e[index] = static_cast<std::int8_t>(power);
  return monomial(nvars, e);
}

LaurentPoly LaurentPoly::from_terms(int nvars, std::vector<Term> terms) {
  LaurentPoly p(nvars);
  std::sort(terms.begin(), terms.end(), CanonicalLess{});
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.second == 0; });
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && is_zero_exponent(terms_[0].first));
}

Int LaurentPoly::constant_term() const {
  // the constant monomial has degree 0 and therefore sits last
  if (!terms_.empty() && is_zero_exponent(terms_.back().first)) return terms_.back().second;
  return 0;
}

void LaurentPoly::check_vars(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_) throw DomainError("Laurent variable count mismatch");
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_vars(o);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && canonical_before(terms_[i].first, o.terms_[j].first))) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || canonical_before(o.terms_[j].first, terms_[i].first)) {
      merged.push_back(o.terms_[j++]);
    } else {
      Int c = terms_[i].second + o.terms_[j].second;
      if (c != 0) merged.emplace_back(terms_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const { return multiply(*this, o, 0); }

LaurentPoly LaurentPoly::operator*(const Int& c) const {
  if (c == 0) return LaurentPoly(nvars_);
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

LaurentPoly LaurentPoly::divide_exact(const Int& d) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) {
    if (!mpz_divisible_p(t.second.get_mpz_t(), d.get_mpz_t())) {
      throw InternalError("inexact Laurent coefficient division");
    }
    mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), d.get_mpz_t());
  }
  return r;
}

LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b, std::size_t term_budget) {
  if (a.nvars() != b.nvars()) throw DomainError("Laurent variable count mismatch");
  const int n = a.nvars();
  if (a.is_zero() || b.is_zero()) return LaurentPoly(n);
  if (a.is_constant()) return b * a.terms()[0].second;
  if (b.is_constant()) return a * b.terms()[0].second;
  TermMap acc;
  acc.reserve(std::min<std::size_t>(a.term_count() * b.term_count(), 1u << 22));
  Int prod;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      const Exponents e = add_exponents(ea, eb, n);
      mpz_mul(prod.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      auto [it, inserted] = acc.try_emplace(e);
      it->second += prod;
    }
    if (term_budget && acc.size() > term_budget) {
      throw ResourceLimit("Laurent product exceeds the term budget of " +
                          std::to_string(term_budget));
    }
  }
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (c != 0) terms.emplace_back(e, std::move(c));
  }
  return LaurentPoly::from_terms(n, std::move(terms));
}

LaurentPoly LaurentPoly::pow(unsigned n, std::size_t term_budget) const {
  LaurentPoly result(nvars_, 1);
  LaurentPoly base = *this;
  while (n) {
    if (n & 1) result = multiply(result, base, term_budget);
    n >>= 1;
    if (n) base = multiply(base, base, term_budget);
  }
  return result;
}

LaurentPoly LaurentPoly::conj() const {
  std::vector<Term> t;
  t.reserve(terms_.size());
  for (const auto& [e, c] : terms_) t.emplace_back(negate(e, nvars_), c);
  return from_terms(nvars_, std::move(t));
}

std::complex<double> LaurentPoly::evaluate(std::span<const std::complex<double>> units) const {
  if (static_cast<int>(units.size()) != nvars_) throw DomainError("wrong number of values");
  std::complex<double> total = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> v = c.get_d();
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] > 0) {
        v *= std::pow(units[i], static_cast<int>(e[i]));
      } else if (e[i] < 0) {
        v *= std::pow(std::conj(units[i]), static_cast<int>(-e[i]));
      }
    }
    total += v;
  }
  return total;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += (e[i] < 0 ? "~u" : "u") + std::to_string(i + 1);
      const int a = e[i] < 0 ? -e[i] : e[i];
      if (a > 1) mono += "^" + std::to_string(a);
    }
    const bool negative = c < 0;
    const Int mag = negative ? Int(-c) : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << mono;
    } else {
      out << mag.get_str() << "*" << mono;
    }
  }
  return out.str();
}

Int constant_term_of_product(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) throw DomainError("Laurent variable count mismatch");
  const LaurentPoly& small = a.term_count() <= b.term_count() ? a : b;
  const LaurentPoly& large = a.term_count() <= b.term_count() ? b : a;
  TermMap index;
  index.reserve(small.term_count());
  for (const auto& [e, c] : small.terms()) index.emplace(negate(e, small.nvars()), c);
  Int total = 0;
  for (const auto& [e, c] : large.terms()) {
    auto it = index.find(e);
    if (it != index.end()) total += c * it->second;
  }
  return total;
}

}  // namespace satotate
