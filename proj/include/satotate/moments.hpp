#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "satotate/family.hpp"
#include "satotate/numeric.hpp"

namespace satotate {

// n-th moment of s = u + ~u for u Haar on U(1): C(n, n/2), 0 for odd n.
Int u1_moment(int n);
// Same for 2s, the trace on U(1)_2.
Int u1_2_moment(int n);

struct Component {
  int k = 0;
  int j = 0;
  std::string label() const;  // "k,j"
  bool operator==(const Component&) const = default;
};

// gamma^k gamma'^j, k = 0..p-2. j ranges over {0, 1} only for m = 2p over Q.
// Throws DomainError for Q(i) with odd m.
std::vector<Component> components(const CurveFamily& family, BaseField base);

constexpr std::size_t kDefaultTermBudget = 20'000'000;

struct MomentOptions {
  int generator = 0;  // 0: default generator
  std::size_t term_budget = kDefaultTermBudget;
  int threads = 1;
};

// M_0..M_{n_max} of the T^(2g-i) coefficient on one component.
std::vector<Int> component_moment_sequence(const CurveFamily& family, int k, int j, int i,
                                           int n_max, const MomentOptions& options = {});
Int component_moment(const CurveFamily& family, int k, int j, int i, int n,
                     const MomentOptions& options = {});
Rational averaged_moment(const CurveFamily& family, int i, int n, BaseField base = BaseField::Q,
                         const MomentOptions& options = {});

struct MomentTable {
  int m = 0;
  BaseField base_field = BaseField::Q;
  int i = 1;
  int n_max = 0;
  int generator = 0;
  std::vector<Component> components;
  std::vector<std::vector<Int>> per_component;  // [component][n]
  std::vector<Rational> averaged;               // [n]
};

MomentTable moment_table(const CurveFamily& family, BaseField base, int i, int n_max,
                         const MomentOptions& options = {});
// Tables for i = 1..i_max sharing one char poly per component.
std::vector<MomentTable> moment_tables(const CurveFamily& family, BaseField base, int i_max,
                                       int n_max, const MomentOptions& options = {});

// mu_1 moment on the identity component as a sum over compositions of n,
// multinomial(n; alpha) * prod M_alpha_v[s], with 2^n for m = 2p.
Int multinomial_mu1_moment(const CurveFamily& family, int n);


struct ConjectureResult {
  std::string name;  // "coprime-charpoly" or "coprime-moments"
  int m = 0;
  int k = 0;
  int j = 0;
  std::string status;  // "pass", "fail", or "skipped" when the char poly premise failed
  std::string detail;
};

// For every component gamma^d gamma'^j with gcd(d, 2g) = 1: the char poly is T^2g + 1 (m = p)
// or (T^g + 1)^2 (m = 2p); where that holds, M_n of a_i vanishes for i < g and 1 <= n <= n_max.
std::vector<ConjectureResult> check_conjectures(const CurveFamily& family, int n_max = 6,
                                                const MomentOptions& options = {});

}  // namespace satotate
