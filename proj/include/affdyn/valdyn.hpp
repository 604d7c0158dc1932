#pragma once

#include <affdyn/algebraic.hpp>
#include <affdyn/poly.hpp>
#include <affdyn/upoly.hpp>
#include <affdyn/valuation.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace affdyn {

/// Raised when d(f, v) = 0, so f_•(v) is undefined.
class Collapsed : public std::runtime_error {
 public:
  Collapsed() : std::runtime_error("collapsed: d(f, v) = 0") {}
};

/// d(f, v) = −min{v(F), v(G), 0}.
Rational d_of(const Endo2& f, const Valuation& v);

/// f_*v : P ↦ v(P∘f), or nullopt when d(f, v) = 0.
std::optional<ExtensionalValuation> pushforward(const Endo2& f, const Valuation& v);

/// f_•(v) = d(f, v)^{-1} f_*v. Monomial inputs whose image is monomial come
/// back as MonomialValuation; everything else is extensional. Throws Collapsed.
Valuation normalize_action(const Endo2& f, const Valuation& v);

/// Monomial valuation with weights in a real quadratic field:
/// v(x) = −s, v(y) = −t.
struct QuadraticMonomial {
  QuadraticNumber s = 1;
  QuadraticNumber t = 1;
};
/// −min over the terms of P of (i·s + j·t), i.e. v(P) for QuadraticMonomial.
QuadraticNumber evaluate(const QuadraticMonomial& v, const Poly2& p);
QuadraticNumber d_of(const Endo2& f, const QuadraticMonomial& v);

struct EigenvaluationResult {
  std::vector<Valuation> trajectory;  ///< v_0, ..., as far as the iteration went
  std::vector<Rational> d_values;     ///< d(f, v_k) for each step taken
  bool converged = false;             ///< successive weights within tol
  Rational residual;                  ///< last max-norm weight difference
  /// Exact fixed point when the map is monomial near it: f_*v* = μ·v*.
  std::optional<QuadraticMonomial> fixed;
  std::optional<QuadraticNumber> d_fixed;  ///< d(f, v*) = μ
  std::optional<QuadraticNumber> alpha;    ///< α(v*)
  std::optional<QuadraticNumber> thinness; ///< A(v*)
  std::string verdict;  ///< "fixed", "trajectory_only" or "inconclusive"
};

/// Iterates f_• from v0 for at most N steps.
EigenvaluationResult eigenvaluation_iterate(const Endo2& f, const Valuation& v0, int N,
                                            const Rational& tol = Rational(1, 1000000000));

struct DegreeGrowthOptions {
  int exact_degree_cap = 32;     ///< compose exactly while deg(f^n) stays below
  int degree_cap = 20000;        ///< give up (partial data) above this degree
  std::uint64_t seed = 0x5eed;   ///< randomness of the modular line restriction
};

struct DegreeGrowth {
  std::vector<long> degrees;        ///< deg f^n for n = 1..N
  std::vector<bool> exact;          ///< composed over Q (else two modular trials)
  bool partial = false;             ///< degree cap hit before N
  std::optional<std::vector<long>> recurrence;  ///< d_n = Σ c_i d_{n−i}
  std::optional<UPoly> characteristic;
  std::optional<UPoly> minimal_polynomial;      ///< of λ1
  int lambda1_multiplicity = 0;     ///< in the characteristic polynomial
  bool dominant_repeated = false;   ///< some root of modulus λ1 is repeated
  Rational lambda1_lo, lambda1_hi;
  std::optional<QuadraticNumber> lambda1;

  /// deg(f^{m+n}) <= deg(f^m) deg(f^n) on stored indices.
  bool submultiplicative() const;
};

DegreeGrowth degree_growth(const Endo2& f, int N, const DegreeGrowthOptions& opts = {});

/// Minimal order (<= 4) integer recurrence fitted on the tail of d and
/// verified on every term.
std::optional<std::vector<long>> find_recurrence(const std::vector<long>& d, int max_order = 4);

struct Lambda2Report {
  int value = 0;
  std::vector<int> generic_trials;  ///< resultant degrees of the generic trials
  int non_generic = 0;
  Rational shear;                   ///< c in x → x + c·y
  std::uint64_t prime = 0;
  int modp_degree = -1;
  bool modp_agrees = false;
};

/// Topological degree by elimination. Throws std::runtime_error when no three
/// generic trials agree.
Lambda2Report lambda2(const Endo2& f, int trials = 3, std::uint64_t seed = 20240601);

struct InequalityReport {
  int lambda2 = 0;
  std::optional<QuadraticNumber> lambda1_sq;
  Rational lambda1_sq_lo, lambda1_sq_hi;
  bool decided = false;  ///< false when only an interval straddling λ2 is known
  bool holds = false;
  bool resonant = false;
};
InequalityReport check_degree_inequality(const DegreeGrowth& g, int lambda2);
InequalityReport check_degree_inequality(const Endo2& f, int N = 8);

enum class Resonance { general, resonant_bounded, resonant_linear_growth, inconclusive };
std::string to_string(Resonance r);

/// F = F(x) of degree l, deg_y G = l with coefficient A_0(x) of y^l.
struct NormalFormShape {
  int l = 0;
  UPoly a0;
};
std::optional<NormalFormShape> triangular_shape(const Endo2& f);

struct ResonanceReport {
  Resonance tag = Resonance::inconclusive;
  DegreeGrowth growth;
  int lambda2 = 0;
  std::vector<double> ratios;  ///< deg(f^n)/λ1^n
  std::optional<NormalFormShape> shape;
  int needed_N = 0;            ///< when inconclusive
};
ResonanceReport resonance_classify(const Endo2& f, int N = 8);

struct ThetaStar {
  std::vector<QuadraticNumber> ratios;  ///< d(f^k, v)/λ1^k, k = 1..n
  int collapse_stage = 0;               ///< first k with d(f^k, v) = 0, or 0
};
ThetaStar theta_star_approx(const Endo2& f, const Valuation& v, int n,
                            const QuadraticNumber& lambda1);
ThetaStar theta_star_approx(const Endo2& f, const QuadraticMonomial& v, int n,
                            const QuadraticNumber& lambda1);

}  // namespace affdyn
