#pragma once

#include <affdyn/poly.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace affdyn {

struct SuiteMap {
  Endo2 f;
  std::string family;  ///< "coordinatewise", "henon" or "mixed"
  bool coordinatewise_power = false;
};

/// Seeded dominant maps of degree <= 3 with integer coefficients in [−5, 5]:
/// coordinatewise powers (a·x^d + b, c·y^d + e), Hénon maps (y, a·x + p(y)),
/// and pairs (F, G) of degrees 2 and 3 with nonzero y² and y³ coefficients.
std::vector<SuiteMap> random_dominant_suite(int count = 50, std::uint64_t seed = 20240601);

}  // namespace affdyn
