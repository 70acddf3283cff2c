#include "satotate/stgroup.hpp"

#include <numeric>

#include "satotate/errors.hpp"
#include "satotate/finite_field.hpp"

namespace satotate {

namespace {

long residue(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

bool is_scalar_unit(const BlockUnitaryMatrix& m) {
  if (!m.is_block_diagonal() || static_cast<int>(m.nonzero_blocks().size()) != m.g()) return false;
  const Block first = m.block(0, 0);
  if (!first(0, 1).is_zero() || !first(1, 0).is_zero() || first(0, 0) != first(1, 1)) return false;
  for (int i = 1; i < m.g(); ++i) {
    if (m.block(i, i) != first) return false;
  }
  return (first(0, 0) * first(0, 0).conj()) == CyclotomicElement(m.level(), 1);
}

void require_generator(const CurveFamily& family, int a) {
  const int n = unit_group_modulus(family);
  const int ord = multiplicative_order(a, n);
  if (ord != family.p() - 1) {
    throw DomainError(std::to_string(a) + " does not generate (Z/" + std::to_string(n) +
                      ")^x: " + (ord == 0 ? std::string("not a unit") :
                                            "order " + std::to_string(ord)) +
                      ", need " + std::to_string(family.p() - 1));
  }
}

}  // namespace

int unit_group_modulus(const CurveFamily& family) { return family.m(); }

int multiplicative_order(long a, long n) {
  a = residue(a, n);
  if (std::gcd(a, n) != 1) return 0;
  long x = a % n;
  int ord = 1;
  while (x != 1 % n) {
    x = x * a % n;
    ++ord;
  }
  return ord;
}

std::vector<int> unit_group_generators(const CurveFamily& family) {
  const int n = unit_group_modulus(family);
  std::vector<int> out;
  for (int a = 1; a < n; ++a) {
    if (multiplicative_order(a, n) == family.p() - 1) out.push_back(a);
  }
  return out;
}

int smallest_generator(const CurveFamily& family) { return unit_group_generators(family).front(); }

int default_generator(const CurveFamily& family) {
  const int r = static_cast<int>(primitive_root(static_cast<u64>(family.p())));
  if (!family.is_even()) return r;
  return r % 2 == 1 ? r : r + family.p();
}

BlockUnitaryMatrix build_gamma(const CurveFamily& family, int a) {
  require_generator(family, a);
  const int g = family.genus();
  const int m = family.m();
  const int level = family.coefficient_level();
  BlockUnitaryMatrix gamma(g, level);
  std::vector<int> used(g + 1, 0);
  for (int i = 1; i <= g; ++i) {
    const int r = static_cast<int>(residue(static_cast<long>(a) * i, m));
    int col;
    Block b(level);
    if (r <= g) {
      col = r;
      b = Block::identity(level);
    } else {
      col = m - r;
      b = Block::j(level);
    }
    if (col < 1 || col > g || used[col]++) {
      throw InternalError("gamma construction is not a block permutation for m=" +
                          std::to_string(m) + ", a=" + std::to_string(a));
    }
    gamma.set_block(i - 1, col - 1, b);
  }
  return gamma;
}

BlockUnitaryMatrix build_gamma_beta_compatible(const CurveFamily& family, int a) {
  BlockUnitaryMatrix gamma = build_gamma(family, a);
  if (!family.is_even()) return gamma;
  const int g = family.genus();
  const int level = family.coefficient_level();
  const Block j = Block::j(level);
  for (int i = 1; i <= g; ++i) {
    const int partner = g + 1 - i;
    if (i <= partner) continue;
    const int col = *gamma.sole_column(i - 1);
    if (gamma.block(i - 1, col) == j) gamma.set_block(i - 1, col, -j);
  }
  return gamma;
}

std::optional<int> find_generator(const CurveFamily& family, const BlockUnitaryMatrix& target) {
  for (int a : unit_group_generators(family)) {
    if (build_gamma(family, a) == target) return a;
  }
  return std::nullopt;
}

BlockUnitaryMatrix build_gamma_prime(const CurveFamily& family) {
  if (!family.is_even()) throw DomainError("gamma' exists only for m = 2p");
  const int level = family.coefficient_level();
  return BlockUnitaryMatrix::block_diagonal(std::vector<Block>(family.genus(), Block::j(level)));
}

BlockUnitaryMatrix build_printed_gamma_prime(const CurveFamily& family) {
  if (!family.is_even()) throw DomainError("gamma' exists only for m = 2p");
  const int level = family.coefficient_level();
  return build_gamma_prime(family).scaled(CyclotomicElement::imaginary_unit(level));
}

BlockUnitaryMatrix build_alpha(const CurveFamily& family) {
  const int level = family.coefficient_level();
  // zeta_p = zeta_N^4, zeta_2p = zeta_N^2
  const int step = family.is_even() ? 2 : 4;
  std::vector<Block> blocks;
  for (int k = 1; k <= family.genus(); ++k) {
    blocks.push_back(Block::diagonal(CyclotomicElement::zeta(level, step * k),
                                     CyclotomicElement::zeta(level, -step * k)));
  }
  return BlockUnitaryMatrix::block_diagonal(blocks);
}

BlockUnitaryMatrix build_beta(const CurveFamily& family) {
  if (!family.is_even()) throw DomainError("beta exists only for m = 2p");
  const int level = family.coefficient_level();
  const int g = family.genus();
  const int p = family.p();
  BlockUnitaryMatrix beta(g, level);
  for (int k = 1; k <= g; ++k) {
    // i * zeta_2p^k = zeta_N^(p + 2k)
    beta.set_block(k - 1, g - k,
                   Block::diagonal(CyclotomicElement::zeta(level, p + 2 * k),
                                   CyclotomicElement::zeta(level, -(p + 2 * k))));
  }
  return beta;
}

std::vector<BlockUnitaryMatrix> endomorphism_generators(const CurveFamily& family) {
  std::vector<BlockUnitaryMatrix> out{build_alpha(family)};
  if (family.is_even()) out.push_back(build_beta(family));
  return out;
}

GaloisElement galois_lift(const CurveFamily& family, int a) {
  const int n = unit_group_modulus(family);
  const int level = family.coefficient_level();
  for (int t = 1; t < level; ++t) {
    if (t % 4 == 1 && residue(t - a, n) == 0) return GaloisElement(level, t);
  }
  throw DomainError(std::to_string(a) + " has no lift to (Z/" + std::to_string(level) + ")^x");
}

GaloisElement complex_conjugation(const CurveFamily& family) {
  return GaloisElement::complex_conjugation(family.coefficient_level());
}

BlockUnitaryMatrix galois_apply(const GaloisElement& sigma, const BlockUnitaryMatrix& m) {
  if (sigma.level() != m.level()) {
    throw DomainError("Galois level " + std::to_string(sigma.level()) +
                      " does not match matrix level " + std::to_string(m.level()));
  }
  return m.galois(sigma.t());
}

LefschetzResult verify_twisted_lefschetz(const BlockUnitaryMatrix& candidate,
                                         std::span<const BlockUnitaryMatrix> generators,
                                         const GaloisElement& sigma) {
  BlockUnitaryMatrix inv(candidate.g(), candidate.level());
  if (candidate.is_unitary()) {
    inv = candidate.conj_transpose();
  } else {
    auto maybe = candidate.inverse();
    if (!maybe) throw DomainError("singular twisted-Lefschetz candidate");
    inv = *maybe;
  }
  for (std::size_t idx = 0; idx < generators.size(); ++idx) {
    const auto& e = generators[idx];
    if (e.g() != candidate.g()) throw DomainError("dimension mismatch");
    const BlockUnitaryMatrix lhs = candidate * e * inv;
    const BlockUnitaryMatrix rhs = galois_apply(sigma, e);
    if (lhs == rhs) continue;
    for (int r = 0; r < lhs.dimension(); ++r) {
      for (int c = 0; c < lhs.dimension(); ++c) {
        const auto x = lhs.entry(r, c);
        const auto y = rhs.entry(r, c);
        if (x != y) {
          return {false, LefschetzWitness{idx, r, c, y.to_string(), x.to_string()}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

bool in_identity_component(const CurveFamily& family, const BlockUnitaryMatrix& m) {
  if (!m.is_block_diagonal()) return false;
  const int g = m.g();
  const CyclotomicElement one(m.level(), 1);
  for (int i = 0; i < g; ++i) {
    const Block b = m.block(i, i);
    if (!b(0, 1).is_zero() || !b(1, 0).is_zero()) return false;
    if (b(1, 1) != b(0, 0).conj()) return false;
    if (b(0, 0) * b(1, 1) != one) return false;
  }
  if (family.is_even()) {
    for (int i = 0; i < g; ++i) {
      if (m.block(i, i) != m.block(g - 1 - i, g - 1 - i)) return false;
    }
  }
  return true;
}

bool ComponentOrderReport::all_hold() const {
  for (const auto& f : facts) {
    if (!f.holds) return false;
  }
  return true;
}

ComponentOrderReport component_order_facts(const CurveFamily& family,
                                           const BlockUnitaryMatrix& gamma,
                                           const std::optional<BlockUnitaryMatrix>& gamma_prime) {
  ComponentOrderReport report;
  const int p = family.p();
  const int g = family.genus();
  const int level = family.coefficient_level();
  auto st0 = [&](const BlockUnitaryMatrix& x) { return in_identity_component(family, x); };

  std::vector<BlockUnitaryMatrix> powers{BlockUnitaryMatrix::identity(g, level)};
  for (int k = 1; k <= p - 1; ++k) powers.push_back(powers.back() * gamma);

  if (!family.is_even()) {
    report.component_count = p - 1;
    const auto minus_id = -BlockUnitaryMatrix::identity(g, level);
    report.facts.push_back({"gamma^(p-1) = -Id", powers[p - 1] == minus_id, ""});

    bool pm_j = powers[g].is_block_diagonal();
    for (int i = 0; pm_j && i < g; ++i) {
      const std::string code = block_code(powers[g].block(i, i));
      pm_j = (code == "J" || code == "-J");
    }
    report.facts.push_back({"gamma^g diagonal blocks all +-J", pm_j, powers[g].to_string()});

    int first_hit = 0;
    for (int k = 1; k <= p - 2 && first_hit == 0; ++k) {
      if (st0(powers[k])) first_hit = k;
    }
    report.facts.push_back({"no gamma^k in identity component for 0<k<p-1", first_hit == 0,
                            first_hit ? "gamma^" + std::to_string(first_hit) + " lies in it" : ""});

    bool distinct = true;
    std::string clash;
    for (int k = 0; k <= p - 2 && distinct; ++k) {
      for (int j = 0; j < k && distinct; ++j) {
        if (st0(powers[k] * powers[j].conj_transpose())) {
          distinct = false;
          clash = std::to_string(j) + "," + std::to_string(k);
        }
      }
    }
    report.facts.push_back({"classes of gamma^k distinct for 0<=k<=p-2", distinct, clash});
    return report;
  }

  if (!gamma_prime) throw DomainError("gamma' required for m = 2p");
  const BlockUnitaryMatrix& gp = *gamma_prime;
  report.component_count = 2 * (p - 1);

  report.facts.push_back({"gamma^(p-1) in identity component", st0(powers[p - 1]),
                          powers[p - 1].to_string()});
  int first_hit = 0;
  for (int k = 1; k <= p - 2 && first_hit == 0; ++k) {
    if (st0(powers[k])) first_hit = k;
  }
  report.facts.push_back({"gamma has order p-1 modulo identity component", first_hit == 0,
                          first_hit ? "gamma^" + std::to_string(first_hit) + " lies in it" : ""});
  report.facts.push_back({"gamma' not in identity component, gamma'^2 is", !st0(gp) && st0(gp * gp),
                          ""});
  const auto commutator = gamma * gp * gamma.conj_transpose() * gp.conj_transpose();
  report.facts.push_back({"gamma and gamma' commute modulo identity component", st0(commutator), ""});

  std::vector<BlockUnitaryMatrix> reps;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k <= p - 2; ++k) reps.push_back(j ? powers[k] * gp : powers[k]);
  }
  bool distinct = true;
  std::string clash;
  for (std::size_t x = 0; x < reps.size() && distinct; ++x) {
    for (std::size_t y = 0; y < x && distinct; ++y) {
      if (st0(reps[x] * reps[y].conj_transpose())) {
        distinct = false;
        clash = std::to_string(y) + "," + std::to_string(x);
      }
    }
  }
  report.facts.push_back({"2(p-1) classes gamma^k gamma'^j pairwise distinct", distinct, clash});
  return report;
}

std::vector<VerificationCheck> verify_family(const CurveFamily& family, int a) {
  std::vector<VerificationCheck> out;
  const auto gens = endomorphism_generators(family);
  const std::span<const BlockUnitaryMatrix> alpha_only(gens.data(), 1);
  const GaloisElement sigma = galois_lift(family, a);
  const int level = family.coefficient_level();
  const int g = family.genus();

  auto lefschetz = [&](const std::string& name, const BlockUnitaryMatrix& c,
                       std::span<const BlockUnitaryMatrix> es, const GaloisElement& s,
                       bool required) {
    const auto r = verify_twisted_lefschetz(c, es, s);
    std::string detail = "sigma_t with t=" + std::to_string(s.t());
    if (r.witness) {
      detail += "; generator " + std::to_string(r.witness->generator_index) + " entry (" +
                std::to_string(r.witness->row) + "," + std::to_string(r.witness->col) +
                "): expected " + r.witness->expected + ", got " + r.witness->actual;
    }
    out.push_back({name, r.holds, required, detail});
  };

  const BlockUnitaryMatrix gamma = build_gamma(family, a);
  out.push_back({"gamma unitary", gamma.is_unitary(), true, ""});
  out.push_back({"gamma symplectic", gamma.is_symplectic(), true, ""});
  out.push_back({"gamma block permutation", gamma.is_block_monomial(), true, ""});
  lefschetz("gamma alpha gamma^-1 = sigma_a(alpha)", gamma, alpha_only, sigma, true);
  lefschetz("gamma^2 alpha gamma^-2 = sigma_a^2(alpha)", gamma * gamma, alpha_only,
            sigma.compose(sigma), true);

  if (!family.is_even()) {
    const auto report = component_order_facts(family, gamma);
    for (const auto& f : report.facts) out.push_back({f.name, f.holds, true, f.detail});
    return out;
  }

  // Tabulated gamma against beta: reported, not required.
  lefschetz("tabulated gamma beta gamma^-1 = sigma_a(beta)", gamma,
            std::span<const BlockUnitaryMatrix>(gens.data() + 1, 1), sigma, false);

  const BlockUnitaryMatrix gt = build_gamma_beta_compatible(family, a);
  out.push_back({"sign-adjusted gamma unitary", gt.is_unitary(), true, ""});
  out.push_back({"sign-adjusted gamma symplectic", gt.is_symplectic(), true, ""});
  lefschetz("sign-adjusted gamma on alpha, beta", gt, gens, sigma, true);
  lefschetz("sign-adjusted gamma^2 on alpha, beta", gt * gt, gens, sigma.compose(sigma), true);

  const BlockUnitaryMatrix gp = build_gamma_prime(family);
  const auto minus_id = -BlockUnitaryMatrix::identity(g, level);
  out.push_back({"gamma' unitary", gp.is_unitary(), true, ""});
  out.push_back({"gamma' symplectic", gp.is_symplectic(), true, ""});
  out.push_back({"gamma'^2 = -Id", gp * gp == minus_id, true, ""});
  lefschetz("gamma' on alpha, beta with complex conjugation", gp, gens, complex_conjugation(family),
            true);

  const BlockUnitaryMatrix printed = build_printed_gamma_prime(family);
  out.push_back({"diag(iJ) unitary", printed.is_unitary(), false, ""});
  out.push_back({"diag(iJ) symplectic", printed.is_symplectic(), false,
                 "transpose(iJ) J (iJ) = -J"});
  out.push_back({"diag(iJ)^2 = -Id", printed * printed == minus_id, false, "(iJ)^2 = +I"});
  lefschetz("diag(iJ) on alpha, beta with complex conjugation", printed, gens,
            complex_conjugation(family), false);

  const auto beta = gens[1];
  out.push_back({"beta^2 scalar unit", is_scalar_unit(beta * beta), true,
                 beta * beta == BlockUnitaryMatrix::identity(g, level) ? "beta^2 = Id" : ""});

  const auto report = component_order_facts(family, gt, gp);
  for (const auto& f : report.facts) out.push_back({f.name, f.holds, true, f.detail});
  return out;
}

}  // namespace satotate
