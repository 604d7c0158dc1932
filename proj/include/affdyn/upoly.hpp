#pragma once

#include <affdyn/poly.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace affdyn {

/// Dense univariate polynomial over the rationals, low degree first.
/// Trailing zero coefficients are never stored.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  UPoly(long c) : c_{Rational(c)} { trim(); }  // NOLINT(google-explicit-constructor)
  static UPoly var() { return UPoly({0, 1}); }
  static UPoly monomial(int k, const Rational& a);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return c_.empty() ? kDegreeOfZero : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational operator[](int k) const;
  Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

  UPoly derivative() const;
  UPoly monic() const;
  Rational eval(const Rational& t) const;
  /// p(t + a).
  UPoly shifted(const Rational& a) const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  UPoly scaled(const Rational& s) const;
  friend bool operator==(const UPoly&, const UPoly&) = default;

  std::string to_string(char var = 'z') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  ///< monic (or zero)
/// s, t with s*a + t*b = gcd(a, b) (monic).
struct ExtendedGcd {
  UPoly g, s, t;
};
ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b);
bool is_squarefree(const UPoly& p);

/// Univariate polynomial in x (var = x) or y as a Poly2.
Poly2 to_poly2(const UPoly& p, Var var);
/// Requires p to involve only `var`.
UPoly to_upoly(const Poly2& p, Var var);

/// View p as a polynomial in x with coefficients in Q[y]: index k holds the
/// coefficient of x^k.
std::vector<UPoly> coeffs_in_x(const Poly2& p);
Poly2 from_coeffs_in_x(const std::vector<UPoly>& c);

/// Monic irreducible factors over Q of a nonzero polynomial, with
/// multiplicities. Returns the leading coefficient separately.
struct UFactorization {
  Rational unit;
  std::vector<std::pair<UPoly, int>> factors;
};
UFactorization factor_univariate(const UPoly& p);

/// Rational roots of p (distinct), ascending.
std::vector<Rational> rational_roots(const UPoly& p);

}  // namespace affdyn
