#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace affdyn {

using Rational = mpq_class;
using Integer = mpz_class;

/// n/d in lowest terms (mpq_class(n, d) does not canonicalize).
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Degree of the zero polynomial. Ordered below every real degree.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

struct Monomial {
  int i = 0;  ///< exponent of x
  int j = 0;  ///< exponent of y

  int degree() const { return i + j; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order, largest first, x before y.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.i > b.i;
  }
};

/// Bivariate polynomial over the rationals in canonical sparse form:
/// no stored coefficient is zero, so equal values have identical term maps.
class Poly2 {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  Poly2() = default;
  Poly2(long c);  // NOLINT(google-explicit-constructor)
  Poly2(const Rational& c);  // NOLINT(google-explicit-constructor)

  static Poly2 x();
  static Poly2 y();
  static Poly2 monomial(int i, int j, const Rational& c = 1);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// Total degree, kDegreeOfZero for the zero polynomial.
  int degree() const;
  int degree_x() const;
  int degree_y() const;

  Rational coeff(int i, int j) const;
  Rational constant_term() const { return coeff(0, 0); }
  /// Leading term in graded lex order. Precondition: nonzero.
  Monomial leading_monomial() const;
  Rational leading_coefficient() const;

  /// Homogeneous component of total degree d.
  Poly2 homogeneous_part(int d) const;

  Poly2 dx() const;
  Poly2 dy() const;
  Poly2 pow(unsigned e) const;
  Poly2 scaled(const Rational& c) const;
  /// Swap the roles of x and y.
  Poly2 swapped() const;

  Rational eval(const Rational& a, const Rational& b) const;

  /// Scale to integer coefficients with content 1 and positive grlex leading
  /// coefficient. Returns the polynomial; the scale factor is written to
  /// *factor when given (result = factor * original).
  Poly2 primitive(Rational* factor = nullptr) const;
  /// Divide by the grlex leading coefficient.
  Poly2 monic() const;

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(const Poly2& o);
  Poly2 operator-() const;

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b);

  std::string to_string() const;

  /// Insert c * x^i y^j, merging with an existing term.
  void add_term(int i, int j, const Rational& c);

 private:
  TermMap terms_;
};

/// Quotient and remainder of multivariate division in grlex order.
/// The remainder is zero iff the divisor divides the dividend.
std::pair<Poly2, Poly2> divmod(const Poly2& a, const Poly2& b);
/// Exact quotient; throws std::domain_error when b does not divide a.
Poly2 divide_exact(const Poly2& a, const Poly2& b);
bool divides(const Poly2& d, const Poly2& a);

/// P(F, G).
Poly2 compose(const Poly2& p, const Poly2& f, const Poly2& g);

enum class Var { x, y };

/// Sylvester resultant of p and q eliminating `var`. The result only involves
/// the other variable. Throws std::invalid_argument when both inputs are
/// constant in `var` or either is zero.
Poly2 resultant(const Poly2& p, const Poly2& q, Var var);

/// Greatest common divisor, normalized by Poly2::primitive (gcd(0,0) = 0).
Poly2 gcd(const Poly2& a, const Poly2& b);

/// Parse error with the byte offset of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// expr := ['+'|'-'] term (('+'|'-') term)* ;
/// term := factor ('*'? factor)* ; factor := atom ('^' int)? ;
/// atom := int ('/' posint)? | 'x' | 'y' | '(' expr ')'.
Poly2 parse_poly(std::string_view text);

/// Dominant polynomial endomorphism (F, G) of the affine plane.
class Endo2 {
 public:
  /// Throws std::invalid_argument when the Jacobian determinant vanishes.
  Endo2(Poly2 f, Poly2 g);

  static Endo2 identity();

  const Poly2& F() const { return f_; }
  const Poly2& G() const { return g_; }
  int degree() const;

  /// This map followed by `other`, i.e. other ∘ this.
  Endo2 then(const Endo2& other) const;
  /// this ∘ inner.
  Endo2 after(const Endo2& inner) const;
  /// Image of a rational point.
  std::pair<Rational, Rational> operator()(const Rational& a, const Rational& b) const;

  std::string to_string() const;
  friend bool operator==(const Endo2&, const Endo2&) = default;

 private:
  Poly2 f_;
  Poly2 g_;
};

/// Pullback g ∘ f.
Poly2 compose(const Poly2& g, const Endo2& f);

/// ∂F/∂x ∂G/∂y − ∂F/∂y ∂G/∂x.
Poly2 jacobian_det(const Poly2& f, const Poly2& g);
Poly2 jacobian_det(const Endo2& f);

/// Raised by iterate_endo when an iterate exceeds the degree cap.
class DegreeCapExceeded : public std::runtime_error {
 public:
  DegreeCapExceeded(int reached_n, int degree)
      : std::runtime_error("degree cap exceeded at iterate " + std::to_string(reached_n) +
                           " (degree " + std::to_string(degree) + ")"),
        iterate(reached_n),
        degree(degree) {}
  int iterate;
  int degree;
};

/// f^n by repeated composition; f^0 is the identity.
Endo2 iterate_endo(const Endo2& f, int n, int degree_cap = 4096);

/// Parses "(F, G)" (outer parentheses optional).
Endo2 parse_endo(std::string_view text);

}  // namespace affdyn
