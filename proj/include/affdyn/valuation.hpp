#pragma once

#include <affdyn/compactification.hpp>
#include <affdyn/extrational.hpp>
#include <affdyn/poly.hpp>
#include <affdyn/upoly.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace affdyn {

/// Finite sum of a_β w^β with rational exponents, stored largest exponent first.
using Puiseux = std::map<Rational, Rational, std::greater<>>;

/// A point at infinity of P²: [c:1:0] (vertical) or [1:0:0] (horizontal).
/// Local coordinates: vertical z = x − c·y, w = y; horizontal z = y, w = x.
struct Center {
  bool horizontal = false;
  Rational c = 0;

  static Center vertical(const Rational& c) { return {false, c}; }
  static Center x_axis() { return {true, 0}; }
  /// P written in the (z, w) coordinates of this center.
  Poly2 local(const Poly2& p) const;
  std::string to_string() const;
  friend bool operator==(const Center&, const Center&) = default;
};

/// v(x) = −s, v(y) = −t, max(s, t) = 1.
struct MonomialValuation {
  Rational s = 1;
  Rational t = 1;

  MonomialValuation() = default;
  /// Throws std::invalid_argument unless s, t >= 0 and max(s, t) = 1.
  MonomialValuation(Rational s, Rational t);
  static MonomialValuation minus_deg() { return {}; }
  friend bool operator==(const MonomialValuation&, const MonomialValuation&) = default;
};

/// The quasimonomial valuation of z = φ(w) + θ w^t with θ generic, where all
/// exponents of φ lie in (t, 1). t = 1 is −deg regardless of the center.
struct QuasimonomialValuation {
  Center center;
  Puiseux phi;
  Rational t = 1;

  bool is_root() const { return t == 1; }
  friend bool operator==(const QuasimonomialValuation&, const QuasimonomialValuation&) = default;
};

/// A formal branch at infinity z = φ(w) + O(w^truncation), as a Puiseux
/// series in the descending variable w. All terms with exponent above
/// `truncation` are known; no truncation means the series is exact.
struct BranchSeries {
  Center center;
  Puiseux phi;
  std::optional<Rational> truncation;
  int line_intersection = 1;  ///< (s·l_∞)
  /// y = p(x) (Var::y) or x = p(y) (Var::x), when the branch came from a graph.
  std::optional<std::pair<UPoly, Var>> graph;
};

/// v_E = b_E^{-1} ord_E.
struct DivisorialValuation {
  std::shared_ptr<const Compactification> X;
  int divisor = 0;
};

/// A valuation known only through its values.
struct ExtensionalValuation {
  std::string name;
  std::function<ExtRational(const Poly2&)> eval;
};

using Valuation = std::variant<MonomialValuation, QuasimonomialValuation, DivisorialValuation,
                               BranchSeries, ExtensionalValuation>;

class InsufficientTruncation : public std::runtime_error {
 public:
  InsufficientTruncation() : std::runtime_error("insufficient truncation") {}
};
class Undecidable : public std::runtime_error {
 public:
  Undecidable() : std::runtime_error("undecidable at current truncation") {}
};
class NotRepresentable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

QuasimonomialValuation to_quasimonomial(const MonomialValuation& v);
std::optional<MonomialValuation> as_monomial(const QuasimonomialValuation& v);

ExtRational evaluate(const Valuation& v, const Poly2& p);

enum class Order { less, greater, equal, incomparable };
std::string to_string(Order o);

/// Tree order; throws Undecidable, or NotRepresentable for non-toric
/// divisorial and extensional valuations.
Order compare(const Valuation& v, const Valuation& w);
/// v ∧ w as a quasimonomial valuation.
QuasimonomialValuation meet(const Valuation& v, const Valuation& w);

/// α: −∞ on curve valuations. Monomial valuations go through the blow-up
/// chain and the dual divisor; quasimonomial ones use the segment integral
/// α = 1 − ∫_t^1 dτ/m(τ), m the lcm of denominators of exponents above τ.
ExtRational skewness(const Valuation& v);
/// A: +∞ on curve valuations; A = −1 − t on quasimonomial ones.
ExtRational thinness(const Valuation& v);

/// Z_v(w) = α(v ∧ w).
ExtRational green(const Valuation& v, const Valuation& w);

/// (s1·s2) = (s1·l_∞)(s2·l_∞)(1 − α(v_s1 ∧ v_s2)); 0 for different centers.
Rational local_intersection(const BranchSeries& s1, const BranchSeries& s2);
/// As above, refining graph branches until the meet is decidable.
Rational local_intersection_refining(BranchSeries s1, BranchSeries s2, int max_terms = 256);

/// The branch at infinity of y = p(x) (dependent = Var::y) or x = p(y), for
/// p monic of degree >= 2, with `terms` Puiseux coefficients.
BranchSeries graph_branch(const UPoly& p, Var dependent, int terms = 16);
/// The branch at infinity of the line a·x + b·y + c = 0.
BranchSeries line_branch(const Rational& a, const Rational& b, const Rational& c);
/// Same branch with at least `terms` coefficients (graph branches only).
BranchSeries refined(const BranchSeries& s, int terms);

std::string to_string(const Valuation& v);

}  // namespace affdyn
