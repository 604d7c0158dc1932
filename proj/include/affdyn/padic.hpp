#pragma once

#include <affdyn/modp.hpp>
#include <affdyn/orbits.hpp>

#include <array>
#include <climits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace affdyn {

/// Integers mod p^m for an odd prime p.
struct PAdicContext {
  PAdicContext(long p, int m = 12);
  long p;
  int m;
  Integer pm;  ///< p^m
};

inline constexpr int kInfiniteValuation = INT_MAX;

/// v_p(r), kInfiniteValuation for 0.
int padic_valuation(const Rational& r, long p);
/// |r|_p = p^(-v_p(r)), 0 for 0.
Rational padic_abs(const Rational& r, long p);
/// Residue in [0, p^m) of a p-integral rational; throws std::domain_error otherwise.
Integer reduce_mod(const Rational& r, const PAdicContext& ctx);

class BadPrime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First candidate p >= 3 dividing no coefficient denominator and, when
/// check_degree is set, keeping both component degrees. Throws BadPrime.
long good_prime(const Endo2& f, const std::vector<long>& candidates, bool check_degree = true);

/// Polynomial over Z/p with coefficients in [0, p).
struct PolyModP {
  struct Term {
    int i, j;
    modp::u64 c;
  };
  std::vector<Term> terms;
  bool is_zero() const { return terms.empty(); }
  /// Lift to integer coefficients in [0, p).
  Poly2 lift() const;
};

/// Arithmetic in F_p (degree 1) or F_p[t]/(t^2 - r) with r a non-residue (degree 2).
class FiniteField {
 public:
  using Elt = std::array<modp::u64, 2>;  ///< a + b t
  FiniteField(long p, int degree);
  long p() const { return p_; }
  int degree() const { return degree_; }
  modp::u64 nonresidue() const { return r_; }
  std::size_t size() const { return degree_ == 1 ? p_ : static_cast<std::size_t>(p_) * p_; }
  Elt element(std::size_t index) const;
  std::size_t index(const Elt& e) const { return e[0] + e[1] * p_; }

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt lift(modp::u64 c) const { return {c, 0}; }
  bool is_zero(const Elt& a) const { return a[0] == 0 && a[1] == 0; }
  Elt eval(const PolyModP& q, const Elt& x, const Elt& y) const;

 private:
  long p_;
  int degree_;
  modp::u64 r_ = 0;
  modp::Field k_;
};

struct EndoModP {
  long p;
  PolyModP F, G;
  PolyModP Fx, Fy, Gx, Gy;
  PolyModP jacobian;
};

/// Coefficientwise reduction. Throws BadPrime when a denominator is divisible
/// by p or the Jacobian determinant vanishes identically mod p.
EndoModP reduce_mod_p(const Endo2& f, long p);
PolyModP reduce_poly_mod_p(const Poly2& q, long p);

struct PeriodicPoint {
  FiniteField::Elt x, y;
  int field_degree = 1;  ///< smallest field containing the point
  int period = 1;
  bool critical = false;  ///< the cycle meets the critical set
};

/// Every periodic point with period <= max_period over F_p and, when
/// max_field_degree = 2, over F_{p^2} (points not already over F_p).
std::vector<PeriodicPoint> periodic_points_mod_p(const EndoModP& f, int max_period,
                                                 int max_field_degree = 1);

using Mat2 = std::array<FiniteField::Elt, 4>;  ///< row major

/// Least k with d(f^k)(x) = id, a multiple of the period. Throws
/// std::invalid_argument at a critical point.
long identity_tangent_iterate(const EndoModP& f, const PeriodicPoint& x);
/// d(f^k) at x by the chain rule.
Mat2 iterate_differential(const EndoModP& f, const FiniteField& k, const PeriodicPoint& x, long n);

/// max |x_i y_j - x_j y_i|_p / (max |x_i|_p max |y_j|_p).
Rational projective_metric(const std::vector<Rational>& P, const std::vector<Rational>& Q, long p);

/// Target set of attraction_monitor, in the projective plane [x0 : x : y]
/// with the affine plane at x0 = 1.
struct BoundaryTarget {
  enum class Kind { line_at_infinity, point } kind = Kind::line_at_infinity;
  std::vector<Rational> point;  ///< homogeneous coordinates when kind == point
};

struct AttractionReport {
  std::vector<Rational> distances;
  bool monotone_tail = false;  ///< second half non-increasing
  bool stationary = false;     ///< the orbit hit a cycle
  int steps = 0;
};

/// d_p(f^n(p0), target) for n = 0..N. f must be defined over Z_(p).
AttractionReport attraction_monitor(const Endo2& f, const Point& p0, const BoundaryTarget& target,
                                    const PAdicContext& ctx, int N, long height_cap = 1 << 16);

/// Coordinate sequences of the orbit reduced mod p^m.
std::array<std::vector<Integer>, 2> orbit_mod(const Endo2& f, const Point& p0, const PAdicContext& ctx,
                                              int N);

struct MahlerReport {
  int N = 0;
  int K = 0;
  std::vector<int> valuations;  ///< v_p(Δ^k a_0) for k = 0..K, capped at m
  std::vector<int> schedule;    ///< required valuation for k = 0..K
  std::optional<int> fails_at;
  double slope = 0;  ///< least-squares slope of the valuations over k = 1..K
  bool analytic_consistent() const { return !fails_at; }
};

/// Required v_p(Δ^k a_0): floor(k/(p-1)) + ceil(k/2) - 1 for k >= 1.
int mahler_schedule(int k, long p);

/// Throws std::invalid_argument when the sequence is not longer than K or
/// m does not exceed the schedule at K.
MahlerReport mahler_test(const std::vector<Integer>& seq, int K, const PAdicContext& ctx);

}  // namespace affdyn
