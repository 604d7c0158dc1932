#pragma once

#include <affdyn/factor.hpp>
#include <affdyn/orbits.hpp>
#include <affdyn/rational_fn.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace affdyn {

/// F and G are both constant on {q = 0}, tested as q | Jac(F, q) and
/// q | Jac(G, q). q must be irreducible.
bool is_contracted(const Endo2& f, const Poly2& q);

/// Irreducible factors of the Jacobian determinant that f contracts.
std::vector<Poly2> contracted_curves(const Endo2& f, int cap = kDefaultFactorCap);

enum class Invariance { invariant, totally_invariant };
std::string to_string(Invariance t);

struct InvariantCurve {
  Poly2 P;  ///< primitive, positive grlex leading coefficient
  Invariance type = Invariance::invariant;
  int multiplicity = 0;  ///< ord_C f*C
  /// P∘f = P^multiplicity * cofactor.expand().
  Factorization cofactor;
  std::vector<bool> contracted;  ///< per cofactor factor
  bool ramified = false;         ///< P divides the Jacobian determinant
};

/// nullopt when P does not divide P∘f.
std::optional<InvariantCurve> invariant_curve_test(const Endo2& f, const Poly2& P,
                                                   int cap = kDefaultFactorCap);

struct HarvestOptions {
  int trials = 5;
  int D_max = 4;
  std::uint64_t seed = 20240601;
  long height_cap = 4096;
  int cap = kDefaultFactorCap;
};

struct HarvestReport {
  std::vector<Point> starts;  ///< start points whose orbit supported at least D = 1
  std::vector<std::vector<DensityCertificate>> scans;
  std::vector<InvariantCurve> curves;
};

/// Random rational start points with pairwise distinct directions and
/// nonzero coordinates; scans run concurrently.
HarvestReport harvest_invariant_curves(const Endo2& f, const HarvestOptions& opt = {});
/// Harvest from given start points.
HarvestReport harvest_invariant_curves(const Endo2& f, const std::vector<Point>& starts,
                                       const HarvestOptions& opt = {});

struct SemiInvariant {
  RationalFn2 g;
  Rational A;
  std::vector<Poly2> curves;
  std::vector<Integer> exponents;  ///< g = prod curves[i]^exponents[i]
};

struct SemiInvariantReport {
  std::vector<Poly2> basis;  ///< contracted curves spanning V
  std::vector<Poly2> used;   ///< totally invariant curves of multiplicity 1
  std::vector<std::vector<int>> cofactor_vectors;  ///< F_i over the basis
  std::vector<SemiInvariant> semis;
  std::string note;
};

SemiInvariantReport build_semi_invariants(const Endo2& f, const std::vector<InvariantCurve>& curves);

struct InvariantSearchReport {
  std::vector<Poly2> contracted;
  HarvestReport harvest;
  SemiInvariantReport semi;
  std::optional<RationalFn2> g;  ///< verified g∘f = g, nonconstant
  std::string note;
};

inline constexpr int kMaxRatioExponent = 12;

InvariantSearchReport invariant_function_search(const Endo2& f, const HarvestOptions& opt = {});

/// g∘f = g exactly and g nonconstant.
bool is_invariant_function(const Endo2& f, const RationalFn2& g);

}  // namespace affdyn
