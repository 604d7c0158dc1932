#pragma once

#include <affdyn/linalg.hpp>
#include <affdyn/poly.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace affdyn {

using Point = std::pair<Rational, Rational>;

enum class OrbitStatus { completed, preperiodic, aborted };
std::string to_string(OrbitStatus s);

struct OrbitRecord {
  Point start;
  std::vector<Point> points;  ///< f^n(start) for n = 0..
  std::vector<long> heights;  ///< max bit length of the numerators and denominators
  OrbitStatus status = OrbitStatus::completed;
  /// (m, n) with m < n and points[m] == points[n], when preperiodic.
  std::optional<std::pair<int, int>> cycle;
};

/// Up to N iterates; stops at the first repeated point or when a coordinate
/// exceeds height_cap bits (that point is not stored).
OrbitRecord iterate_orbit(const Endo2& f, const Point& p, int N, long height_cap = 4096);

long height(const Point& p);

enum class DensityVerdict { dense_up_to_D, curve_found };
std::string to_string(DensityVerdict v);

struct DensityCertificate {
  int D = 0;
  int M = 0;  ///< points used
  DensityVerdict verdict = DensityVerdict::dense_up_to_D;
  int rank = 0;
  std::vector<int> pivots;       ///< pivot columns, monomials ordered by degree then x-power descending
  std::optional<Poly2> witness;  ///< primitive, vanishing at every used point
};

class InsufficientPoints : public std::invalid_argument {
 public:
  InsufficientPoints(int have, int need)
      : std::invalid_argument("insufficient points: " + std::to_string(have) +
                              " distinct orbit points, need " + std::to_string(need)),
        have(have),
        need(need) {}
  int have, need;
};

/// Monomials x^i y^j with i + j <= D, by degree, then x-power descending.
std::vector<Monomial> monomials_up_to(int D);
inline int monomial_count(int D) { return (D + 1) * (D + 2) / 2; }

/// Curve fitting through the distinct orbit points. M defaults to
/// (D+1)(D+2)/2 + 6, capped by the number of distinct points available.
DensityCertificate density_test(const OrbitRecord& orbit, int D, std::optional<int> M = {});

/// Certificates for D = 1..D_max, stopping at the first curve. The witness
/// of that last certificate keeps only the irreducible factors needed to
/// vanish on the used points.
std::vector<DensityCertificate> density_scan(const Endo2& f, const Point& p, int D_max,
                                             long height_cap = 4096);
/// Same scan on an orbit computed by the caller.
std::vector<DensityCertificate> density_scan(const OrbitRecord& orbit, int D_max);

/// Number of distinct points in the orbit.
int distinct_count(const OrbitRecord& orbit);

}  // namespace affdyn
