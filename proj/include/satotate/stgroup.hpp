#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "satotate/block_matrix.hpp"
#include "satotate/cyclotomic.hpp"
#include "satotate/family.hpp"

namespace satotate {

// Modulus of the unit group the generator a lives in: p for m = p, 2p for m = 2p.
int unit_group_modulus(const CurveFamily& family);
int multiplicative_order(long a, long n);  // 0 if a is not a unit
std::vector<int> unit_group_generators(const CurveFamily& family);
int smallest_generator(const CurveFamily& family);
// Smallest primitive root mod p, lifted to an odd residue for m = 2p.
int default_generator(const CurveFamily& family);

// gamma as tabulated: block-row i carries I at column <ai> when <ai> <= g and J at
// column m - <ai> otherwise, with <.> the residue mod m.
BlockUnitaryMatrix build_gamma(const CurveFamily& family, int a);
// Same permutation; for m = 2p the second row of every J-pair (i, g+1-i) carries -J so that
// the beta identity holds. Equal to build_gamma for m = p.
BlockUnitaryMatrix build_gamma_beta_compatible(const CurveFamily& family, int a);
// Generator whose build_gamma equals target, if any.
std::optional<int> find_generator(const CurveFamily& family, const BlockUnitaryMatrix& target);

// diag(J, ..., J): the symplectic representative of gamma' (conjugates like diag(iJ)).
BlockUnitaryMatrix build_gamma_prime(const CurveFamily& family);
// diag(iJ, ..., iJ) as printed.
BlockUnitaryMatrix build_printed_gamma_prime(const CurveFamily& family);

BlockUnitaryMatrix build_alpha(const CurveFamily& family);
BlockUnitaryMatrix build_beta(const CurveFamily& family);
std::vector<BlockUnitaryMatrix> endomorphism_generators(const CurveFamily& family);

// sigma_a on Q(zeta_4p): t = a mod (p or 2p), t = 1 mod 4.
GaloisElement galois_lift(const CurveFamily& family, int a);
GaloisElement complex_conjugation(const CurveFamily& family);
BlockUnitaryMatrix galois_apply(const GaloisElement& sigma, const BlockUnitaryMatrix& m);

struct LefschetzWitness {
  std::size_t generator_index = 0;
  int row = 0;
  int col = 0;
  std::string expected;
  std::string actual;
};

struct LefschetzResult {
  bool holds = false;
  std::optional<LefschetzWitness> witness;
};

// gamma * e * gamma^-1 == sigma(e) for each e.
LefschetzResult verify_twisted_lefschetz(const BlockUnitaryMatrix& candidate,
                                         std::span<const BlockUnitaryMatrix> generators,
                                         const GaloisElement& sigma);

// Block-diagonal with diag(u, conj u) blocks, |u| = 1; for m = 2p blocks k and g+1-k agree.
bool in_identity_component(const CurveFamily& family, const BlockUnitaryMatrix& m);

struct OrderFact {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ComponentOrderReport {
  int component_count = 0;
  std::vector<OrderFact> facts;
  bool all_hold() const;
};

// gamma_prime is required for m = 2p.
ComponentOrderReport component_order_facts(const CurveFamily& family, const BlockUnitaryMatrix& gamma,
                                           const std::optional<BlockUnitaryMatrix>& gamma_prime =
                                               std::nullopt);

struct VerificationCheck {
  std::string name;
  bool passed = false;
  bool required = true;  // informational checks do not affect the exit status
  std::string detail;
};

std::vector<VerificationCheck> verify_family(const CurveFamily& family, int a);

}  // namespace satotate
