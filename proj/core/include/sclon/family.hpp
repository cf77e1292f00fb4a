#pragma once

#include <string_view>

namespace sclon {

enum class Family {
  DiffusionReaction,
  Burgers,
  Advection,
  ConvectionDiffusionBL,
  KSE2D,
  NSE2D,
};

std::string_view family_name(Family family) noexcept;
/// Inverse of family_name; throws ErrorCode::InvalidConfig on unknown names.
Family family_from_name(std::string_view name);

inline bool is_legendre(Family f) {
  return f == Family::DiffusionReaction || f == Family::ConvectionDiffusionBL;
}
inline bool is_2d(Family f) { return f == Family::KSE2D || f == Family::NSE2D; }

}  // namespace sclon
