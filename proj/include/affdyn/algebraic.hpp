#pragma once

#include <affdyn/poly.hpp>
#include <affdyn/upoly.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace affdyn {

/// a + b·√D over the rationals, D a squarefree integer >= 2 (or b = 0).
/// Mixed arithmetic requires equal radicands unless one side is rational.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(long a) : a_(a) {}             // NOLINT(google-explicit-constructor)
  /// Throws std::invalid_argument for a negative radicand.
  QuadraticNumber(const Rational& a, const Rational& b, const Integer& radicand);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  int sign() const;
  double to_double() const;
  QuadraticNumber conjugate() const;
  /// Primitive integer polynomial with positive leading coefficient.
  UPoly minimal_polynomial() const;

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);
  QuadraticNumber operator-() const;
  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  QuadraticNumber pow(unsigned e) const;

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() == 0;
  }
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() <=> 0;
  }

  /// "1/2 + 1/2*sqrt(5)".
  std::string to_string() const;

 private:
  void unify(const QuadraticNumber& o);
  Rational a_ = 0;
  Rational b_ = 0;
  Integer d_ = 0;
};

/// Disjoint intervals (lo, hi], each holding exactly one real root of the
/// squarefree polynomial p, ascending, each of width at most `width`.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p,
                                                              const Rational& width);

/// Roots of p of degree 1 or 2 in exact form; nullopt for other degrees.
std::optional<std::vector<QuadraticNumber>> quadratic_roots(const UPoly& p);

/// Rational u with u^n >= m and u − m^{1/n} < width (m > 0).
Rational root_upper_bound(const Integer& m, int n, const Rational& width);

}  // namespace affdyn
