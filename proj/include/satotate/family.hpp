#pragma once

#include <string>

namespace satotate {

enum class BaseField { Q, Qi };

BaseField parse_base_field(const std::string& text);
std::string to_string(BaseField field);

// y^2 = x^m - 1 with m = p or m = 2p, p an odd prime.
class CurveFamily {
 public:
  explicit CurveFamily(int m);

  int m() const { return m_; }
  int p() const { return p_; }
  int genus() const { return genus_; }
  bool is_even() const { return m_ == 2 * p_; }
  // One point at infinity for odd m, two for even m.
  int points_at_infinity() const { return is_even() ? 2 : 1; }
  // Number of independent unit variables in the identity component.
  int variable_count() const { return is_even() ? genus_ / 2 : genus_; }
  // Level of the coefficient field Q(zeta_N) holding zeta_p, zeta_2p and i.
  int coefficient_level() const { return 4 * p_; }

  bool operator==(const CurveFamily& o) const { return m_ == o.m_; }

 private:
  int m_;
  int p_;
  int genus_;
};

}  // namespace satotate
