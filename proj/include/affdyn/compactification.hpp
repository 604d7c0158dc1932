#pragma once

#include <affdyn/extrational.hpp>
#include <affdyn/poly.hpp>
#include <affdyn/rational_fn.hpp>

#include <json.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace affdyn {

/// A point on a boundary divisor. On the line at infinity (divisor 0) the
/// position m is [1:m:0] and nullopt is [0:1:0]. On an exceptional divisor E
/// the position is the slope v/u in the chart of the point blown up to make E;
/// nullopt (slope ∞) is where E meets the divisor {u = 0}.
struct BoundaryPoint {
  int divisor = 0;
  std::optional<Rational> position;

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
  friend auto operator<=>(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.divisor != b.divisor) return a.divisor <=> b.divisor;
    if (a.position.has_value() != b.position.has_value())
      return a.position.has_value() <=> b.position.has_value();
    if (!a.position) return std::strong_ordering::equal;
    return cmp(*a.position, *b.position) <=> 0;
  }
};

struct DivisorRecord {
  int ord_x = 0;
  int ord_y = 0;
  int ord_omega = 0;  ///< order of dx∧dy
  int b = 1;
  std::optional<BoundaryPoint> center;  ///< point blown up; none for l_∞
  std::vector<int> parents;             ///< boundary divisors through the center
  bool toric = false;                   ///< monomial in (x, y)
};

/// Local coordinates (u, v) at a boundary point, stored as Poly2 variables
/// (x ↦ u, y ↦ v). x, y and the Jacobian of dx∧dy with respect to du∧dv are
/// rational functions of (u, v); u_div/v_div name the boundary divisors
/// {u = 0}, {v = 0} (−1 when the axis is not a boundary divisor).
struct Chart {
  RationalFn2 x;
  RationalFn2 y;
  RationalFn2 jacobian;
  int u_div = -1;
  int v_div = -1;
  bool monomial = false;
};

/// An admissible compactification of the affine plane, built from P² by point
/// blow-ups at infinity. Divisor 0 is the line at infinity.
class Compactification {
 public:
  static Compactification plane();

  int size() const { return static_cast<int>(divisors_.size()); }
  const DivisorRecord& divisor(int e) const { return divisors_.at(e); }
  const std::vector<std::vector<Rational>>& intersection_matrix() const { return m_; }
  const Rational& intersection(int e, int f) const { return m_.at(e).at(f); }

  /// Follows points that were already blown up to the corresponding point on
  /// the newer divisor.
  BoundaryPoint resolve(BoundaryPoint p) const;
  /// The point E ∩ F, if the two divisors meet.
  std::optional<BoundaryPoint> intersection_point(int e, int f) const;

  /// Blow up a boundary point; the new divisor has index size() − 1.
  Compactification blow_up(BoundaryPoint p) const;
  /// Blow up E ∩ F. Throws std::invalid_argument when they do not meet.
  Compactification blow_up_satellite(int e, int f) const;

  /// Coefficients of Ě in the basis of boundary divisors. Throws
  /// std::domain_error when the intersection matrix is singular.
  std::vector<Rational> dual_divisor(int e) const;
  /// α(v_E) = (Ě·Ě)/b_E².
  Rational skewness(int e) const;
  /// A(v_E) = (1 + ord_E(dx∧dy))/b_E.
  Rational thinness(int e) const;

  /// ord_E(P); +∞ for P = 0.
  ExtRational ord(int e, const Poly2& p) const;
  /// (s, t) with v_E = Monomial(s, t) when the divisor is toric.
  std::optional<std::pair<Rational, Rational>> monomial_weights(int e) const;

  Chart point_chart(BoundaryPoint p) const;

  nlohmann::json to_json() const;

  /// Chain of blow-ups realizing Monomial(s, t) (max(s, t) = 1) as a divisor;
  /// returns the compactification and the divisor index.
  static std::pair<Compactification, int> monomial_chain(const Rational& s, const Rational& t);

 private:
  std::vector<DivisorRecord> divisors_;
  std::vector<Chart> creation_charts_;  // chart at the point blown up (empty for l_∞)
  std::vector<std::vector<Rational>> m_;
  std::map<BoundaryPoint, int> blown_up_;
};

}  // namespace affdyn
