#pragma once

#include <affdyn/poly.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace affdyn {

inline constexpr int kDefaultFactorCap = 24;

class FactorCapExceeded : public std::runtime_error {
 public:
  FactorCapExceeded(int degree, int cap)
      : std::runtime_error("factorization cap exceeded: degree " + std::to_string(degree) +
                           " > " + std::to_string(cap)) {}
};

/// P = unit * prod factor^multiplicity. Factors are irreducible over Q,
/// primitive with integer coefficients and positive leading coefficient,
/// ordered by grlex leading monomial (largest first).
struct Factorization {
  Rational unit;
  std::vector<std::pair<Poly2, int>> factors;

  Poly2 expand() const;
};

Factorization factor(const Poly2& p, int degree_cap = kDefaultFactorCap);

/// Distinct irreducible factors of p (multiplicities dropped).
std::vector<Poly2> irreducible_components(const Poly2& p, int degree_cap = kDefaultFactorCap);

}  // namespace affdyn
