#include "satotate/charpoly.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "satotate/errors.hpp"
#include "satotate/stgroup.hpp"

namespace satotate {

CharPoly::CharPoly(int degree, int nvars) : c_(degree + 1, LaurentPoly(nvars)) {
  if (degree < 0) throw DomainError("negative degree");
}

CharPoly::CharPoly(std::vector<LaurentPoly> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) throw DomainError("empty coefficient list");
}

bool CharPoly::is_unitary_self_reciprocal() const {
  const int d = degree();
  const LaurentPoly one(nvars(), 1);
  if (c_[0] != one || c_[d] != one) return false;
  for (int i = 0; i <= d; ++i) {
    if (c_[i] != c_[d - i].conj()) return false;
  }
  return true;
}

CharPoly CharPoly::operator*(const CharPoly& o) const {
  CharPoly r(degree() + o.degree(), nvars());
  for (int i = 0; i <= degree(); ++i) {
    if (c_[i].is_zero()) continue;
    for (int j = 0; j <= o.degree(); ++j) {
      if (!o.c_[j].is_zero()) r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  return r;
}

std::string CharPoly::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const LaurentPoly& c = c_[k];
    if (c.is_zero()) continue;
    std::string power = k == 0 ? "" : (k == 1 ? "T" : "T^" + std::to_string(k));
    std::string body;
    bool negative = false;
    if (c.is_constant()) {
      Int v = c.constant_term();
      negative = v < 0;
      if (negative) v = -v;
      if (k == 0) {
        body = v.get_str();
      } else {
        body = v == 1 ? power : v.get_str() + "*" + power;
      }
    } else {
      body = "(" + c.to_string() + ")" + (k == 0 ? "" : "*" + power);
    }
    if (first) {
      out << (negative ? "-" : "") << body;
    } else {
      out << (negative ? " - " : " + ") << body;
    }
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

CharPoly CharPoly::binomial(int d, const LaurentPoly& c) {
  CharPoly r(d, c.nvars());
  r.c_[d] = LaurentPoly(c.nvars(), 1);
  r.c_[0] += c;
  return r;
}

CharPoly CharPoly::linear(const LaurentPoly& x) {
  CharPoly r(1, x.nvars());
  r.c_[1] = LaurentPoly(x.nvars(), 1);
  r.c_[0] = -x;
  return r;
}

CharPoly CharPoly::from_integers(int nvars, const std::vector<long>& coeffs) {
  std::vector<LaurentPoly> c;
  for (long v : coeffs) c.emplace_back(nvars, Int(v));
  return CharPoly(std::move(c));
}

CharPoly CharPoly::pow(int n) const {
  CharPoly r = from_integers(nvars(), {1});
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

SymbolicMatrix::SymbolicMatrix(int dimension, int nvars) : n_(dimension), nvars_(nvars) {}

LaurentPoly SymbolicMatrix::entry(int r, int c) const {
  auto it = e_.find({r, c});
  return it == e_.end() ? LaurentPoly(nvars_) : it->second;
}

void SymbolicMatrix::set(int r, int c, LaurentPoly v) {
  if (r < 0 || c < 0 || r >= n_ || c >= n_) throw DomainError("matrix index out of range");
  if (v.is_zero()) {
    e_.erase({r, c});
  } else {
    e_.insert_or_assign({r, c}, std::move(v));
  }
}

SymbolicMatrix SymbolicMatrix::operator*(const SymbolicMatrix& o) const {
  if (n_ != o.n_) throw DomainError("matrix dimension mismatch");
  SymbolicMatrix r(n_, nvars_);
  std::map<std::pair<int, int>, LaurentPoly> acc;
  for (const auto& [ik, a] : e_) {
    const int k = ik.second;
    for (auto it = o.e_.lower_bound({k, 0}); it != o.e_.end() && it->first.first == k; ++it) {
      auto [slot, inserted] = acc.try_emplace({ik.first, it->first.second}, LaurentPoly(nvars_));
      slot->second += a * it->second;
    }
  }
  for (auto& [key, v] : acc) r.set(key.first, key.second, std::move(v));
  return r;
}

bool SymbolicMatrix::is_block_monomial() const {
  if (n_ % 2) return false;
  const int g = n_ / 2;
  std::vector<int> row_col(g, -1);
  for (const auto& [rc, v] : e_) {
    const int br = rc.first / 2;
    const int bc = rc.second / 2;
    if (row_col[br] == -1) {
      row_col[br] = bc;
    } else if (row_col[br] != bc) {
      return false;
    }
  }
  std::vector<int> seen(g, 0);
  for (int c : row_col) {
    if (c < 0 || seen[c]++) return false;
  }
  return true;
}

namespace {

using Block2 = std::array<LaurentPoly, 4>;

Block2 mul2(const Block2& a, const Block2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

}  // namespace

std::optional<std::vector<CycleFactor>> cycle_factors(const SymbolicMatrix& m) {
  if (!m.is_block_monomial()) return std::nullopt;
  const int g = m.dimension() / 2;
  const int nv = m.nvars();
  std::vector<int> perm(g, -1);
  for (const auto& [rc, v] : m.entries()) perm[rc.first / 2] = rc.second / 2;
  auto block = [&](int i, int j) {
    return Block2{m.entry(2 * i, 2 * j), m.entry(2 * i, 2 * j + 1), m.entry(2 * i + 1, 2 * j),
                  m.entry(2 * i + 1, 2 * j + 1)};
  };
  std::vector<CycleFactor> out;
  std::vector<char> done(g, 0);
  for (int start = 0; start < g; ++start) {
    if (done[start]) continue;
    Block2 prod{LaurentPoly(nv, 1), LaurentPoly(nv), LaurentPoly(nv), LaurentPoly(nv, 1)};
    int len = 0;
    for (int i = start; !done[i]; i = perm[i]) {
      done[i] = 1;
      prod = mul2(prod, block(i, perm[i]));
      ++len;
    }
    out.push_back({len, prod[0] + prod[3], prod[0] * prod[3] - prod[1] * prod[2]});
  }
  return out;
}

CharPoly characteristic_polynomial(const SymbolicMatrix& m) {
  const auto factors = cycle_factors(m);
  if (!factors) return characteristic_polynomial_leverrier(m);
  CharPoly result = CharPoly::from_integers(m.nvars(), {1});
  for (const auto& f : *factors) {
    // det(T^L - P) = T^(2L) - tr(P) T^L + det(P)
    CharPoly factor(2 * f.length, m.nvars());
    factor.set_coefficient(2 * f.length, LaurentPoly(m.nvars(), 1));
    factor.set_coefficient(f.length, -f.trace);
    factor.set_coefficient(0, f.det);
    result = result * factor;
  }
  return result;
}

CharPoly characteristic_polynomial_leverrier(const SymbolicMatrix& m) {
  const int n = m.dimension();
  const int nv = m.nvars();
  CharPoly cp(n, nv);
  cp.set_coefficient(n, LaurentPoly(nv, 1));
  SymbolicMatrix mk(n, nv);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    SymbolicMatrix next = m * mk;
    const LaurentPoly& c = cp.coefficient(n - k + 1);
    for (int i = 0; i < n; ++i) next.set(i, i, next.entry(i, i) + c);
    mk = std::move(next);
    const SymbolicMatrix am = m * mk;
    LaurentPoly tr(nv);
    for (int i = 0; i < n; ++i) tr += am.entry(i, i);
    cp.set_coefficient(n - k, (-tr).divide_exact(k));
  }
  return cp;
}

SymbolicMatrix identity_component_element(const CurveFamily& family) {
  const int g = family.genus();
  const int nv = family.variable_count();
  SymbolicMatrix u(2 * g, nv);
  for (int k = 1; k <= g; ++k) {
    const int v = family.is_even() ? std::min(k, g + 1 - k) : k;
    u.set(2 * (k - 1), 2 * (k - 1), LaurentPoly::variable(nv, v - 1, 1));
    u.set(2 * (k - 1) + 1, 2 * (k - 1) + 1, LaurentPoly::variable(nv, v - 1, -1));
  }
  return u;
}

BlockUnitaryMatrix component_representative(const CurveFamily& family, int k, int j,
                                            int generator) {
  if (k < 0 || k > family.p() - 2) {
    throw DomainError("component exponent k must lie in 0.." + std::to_string(family.p() - 2));
  }
  if (j < 0 || j > (family.is_even() ? 1 : 0)) {
    throw DomainError(family.is_even() ? "j must be 0 or 1" : "j must be 0 for m = p");
  }
  BlockUnitaryMatrix r = build_gamma_beta_compatible(family, generator).power(k);
  if (j) r = r * build_gamma_prime(family);
  return r;
}

SymbolicMatrix component_matrix(const CurveFamily& family, int k, int j, int generator) {
  const BlockUnitaryMatrix r = component_representative(family, k, j, generator);
  const SymbolicMatrix u = identity_component_element(family);
  SymbolicMatrix out(r.dimension(), u.nvars());
  for (const auto& [ij, b] : r.nonzero_blocks()) {
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) {
        const auto& x = b(a, c);
        if (x.is_zero()) continue;
        if (!x.is_rational() || x.rational_value().get_den() != 1) {
          throw InternalError("component representative has a non-integer entry");
        }
        const int row = 2 * ij.first + a;
        out.set(row, 2 * ij.second + c, u.entry(row, row) * x.rational_value().get_num());
      }
    }
  }
  return out;
}

CharPoly char_poly_component(const CurveFamily& family, int k, int j, int generator) {
  return characteristic_polynomial(component_matrix(family, k, j, generator));
}

CharPoly char_poly_component(const CurveFamily& family, int k, int j) {
  return char_poly_component(family, k, j, default_generator(family));
}

std::vector<FormCheck> check_general_forms(const CurveFamily& family, int generator) {
  std::vector<FormCheck> out;
  const int g = family.genus();
  const int nv = family.variable_count();
  const int p = family.p();
  auto record = [&](std::string statement, int k, int j, bool conjecture, const CharPoly& expected) {
    const CharPoly got = char_poly_component(family, k, j, generator);
    const bool ok = got == expected;
    out.push_back({std::move(statement), k, j, conjecture, ok, ok ? "" : got.to_string()});
  };

  CharPoly product = CharPoly::from_integers(nv, {1});
  for (int v = 0; v < nv; ++v) {
    const CharPoly lin = CharPoly::linear(LaurentPoly::variable(nv, v, 1)) *
                         CharPoly::linear(LaurentPoly::variable(nv, v, -1));
    product = product * (family.is_even() ? lin * lin : lin);
  }
  const CharPoly t2_plus_1 = CharPoly::from_integers(nv, {1, 0, 1});

  if (!family.is_even()) {
    record("P_0 = prod (T - u_i)(T - ~u_i)", 0, 0, false, product);
    record("P_g = (T^2 + 1)^g", g, 0, false, t2_plus_1.pow(g));
    for (int d = 1; d <= p - 2; ++d) {
      if (std::gcd(d, 2 * g) != 1) continue;
      record("P_d = T^2g + 1 for gcd(d, 2g) = 1", d, 0, true,
             CharPoly::binomial(2 * g, LaurentPoly(nv, 1)));
    }
    return out;
  }
  record("P_{0,0} = prod (T - u_i)^2 (T - ~u_i)^2", 0, 0, false, product);
  record("P_{g/2,0} = (T^2 + 1)^g", g / 2, 0, false, t2_plus_1.pow(g));
  const CharPoly tg = CharPoly::binomial(g, LaurentPoly(nv, 1));
  for (int d = 1; d <= p - 2; ++d) {
    if (std::gcd(d, 2 * g) != 1) continue;
    for (int j = 0; j < 2; ++j) record("P_{d,j} = (T^g + 1)^2 for gcd(d, 2g) = 1", d, j, true, tg * tg);
  }
  return out;
}

std::vector<FormCheck> check_general_forms(const CurveFamily& family) {
  return check_general_forms(family, default_generator(family));
}

namespace {

void require_units(std::span<const std::complex<double>> units) {
  for (const auto& u : units) {
    if (std::abs(std::abs(u) - 1.0) > 1e-12) throw DomainError("specialization value is not a unit");
  }
}

}  // namespace

std::vector<std::complex<double>> specialize(const CharPoly& cp,
                                             std::span<const std::complex<double>> units) {
  require_units(units);
  std::vector<std::complex<double>> out;
  for (const auto& c : cp.coefficients()) out.push_back(c.evaluate(units));
  return out;
}

std::vector<std::vector<std::complex<double>>> specialize_matrix(
    const SymbolicMatrix& m, std::span<const std::complex<double>> units) {
  require_units(units);
  std::vector<std::vector<std::complex<double>>> out(
      m.dimension(), std::vector<std::complex<double>>(m.dimension(), 0.0));
  for (const auto& [rc, v] : m.entries()) out[rc.first][rc.second] = v.evaluate(units);
  return out;
}

}  // namespace satotate
