#pragma once

#include <affdyn/poly.hpp>

#include <string>

namespace affdyn {

/// num / den with gcd(num, den) constant and den monic in grlex order.
class RationalFn2 {
 public:
  RationalFn2(Poly2 num, Poly2 den = 1);  // NOLINT(google-explicit-constructor)

  const Poly2& num() const { return num_; }
  const Poly2& den() const { return den_; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// max(deg num, deg den).
  int degree() const;

  /// g ∘ f.
  RationalFn2 compose(const Endo2& f) const;
  /// Throws std::domain_error at a pole.
  Rational eval(const Rational& a, const Rational& b) const;

  friend RationalFn2 operator+(const RationalFn2& a, const RationalFn2& b);
  friend RationalFn2 operator-(const RationalFn2& a, const RationalFn2& b);
  friend RationalFn2 operator*(const RationalFn2& a, const RationalFn2& b);
  friend RationalFn2 operator/(const RationalFn2& a, const RationalFn2& b);
  friend bool operator==(const RationalFn2&, const RationalFn2&) = default;

  std::string to_string() const;

 private:
  Poly2 num_;
  Poly2 den_;
};

}  // namespace affdyn
