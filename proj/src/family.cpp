#include "satotate/family.hpp"

#include "satotate/errors.hpp"
#include "satotate/finite_field.hpp"

namespace satotate {

BaseField parse_base_field(const std::string& text) {
  if (text == "Q") return BaseField::Q;
  if (text == "Qi") return BaseField::Qi;
  throw DomainError("base field must be Q or Qi, got '" + text + "'");
}

std::string to_string(BaseField field) { return field == BaseField::Q ? "Q" : "Qi"; }

CurveFamily::CurveFamily(int m) : m_(m) {
  if (m < 3) throw DomainError("m must be p or 2p for an odd prime p, got " + std::to_string(m));
  if (m % 2 == 1) {
    p_ = m;
  } else {
    p_ = m / 2;
  }
  if (p_ < 3 || p_ % 2 == 0 || !is_prime(static_cast<u64>(p_))) {
    throw DomainError("m must be p or 2p for an odd prime p, got " + std::to_string(m));
  }
  genus_ = (m % 2 == 1) ? (m - 1) / 2 : (m - 2) / 2;
}

}  // namespace satotate
