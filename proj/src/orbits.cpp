#include <affdyn/orbits.hpp>

#include <affdyn/factor.hpp>

#include <algorithm>
#include <map>

namespace affdyn {
namespace {

struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    if (int c = cmp(a.first, b.first); c != 0) return c < 0;
    return cmp(a.second, b.second) < 0;
  }
};

long bits(const Rational& r) {
  return static_cast<long>(
      std::max(mpz_sizeinbase(r.get_num_mpz_t(), 2), mpz_sizeinbase(r.get_den_mpz_t(), 2)));
}

std::vector<Point> distinct_points(const OrbitRecord& orbit) {
  std::vector<Point> out;
  std::map<Point, int, PointLess> seen;
  for (const auto& p : orbit.points)
    if (seen.emplace(p, 0).second) out.push_back(p);
  return out;
}

bool vanishes_on(const Poly2& p, const std::vector<Point>& pts) {
  for (const auto& [a, b] : pts)
    if (sgn(p.eval(a, b)) != 0) return false;
  return true;
}

}  // namespace

std::string to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::completed: return "completed";
    case OrbitStatus::preperiodic: return "preperiodic";
    case OrbitStatus::aborted: return "aborted";
  }
  return "?";
}

std::string to_string(DensityVerdict v) {
  return v == DensityVerdict::dense_up_to_D ? "dense_up_to_D" : "curve_found";
}

long height(const Point& p) { return std::max(bits(p.first), bits(p.second)); }

OrbitRecord iterate_orbit(const Endo2& f, const Point& p, int N, long height_cap) {
  OrbitRecord r;
  r.start = p;
  r.points.push_back(p);
  r.heights.push_back(height(p));
  std::map<Point, int, PointLess> seen{{p, 0}};
  for (int n = 1; n <= N; ++n) {
    Point q = f(r.points.back().first, r.points.back().second);
    const long h = height(q);
    if (h > height_cap) {
      r.status = OrbitStatus::aborted;
      return r;
    }
    r.points.push_back(q);
    r.heights.push_back(h);
    auto [it, fresh] = seen.emplace(q, n);
    if (!fresh) {
      r.status = OrbitStatus::preperiodic;
      r.cycle = std::make_pair(it->second, n);
      return r;
    }
  }
  return r;
}

std::vector<Monomial> monomials_up_to(int D) {
  std::vector<Monomial> out;
  for (int d = 0; d <= D; ++d)
    for (int i = d; i >= 0; --i) out.push_back({i, d - i});
  return out;
}

DensityCertificate density_test(const OrbitRecord& orbit, int D, std::optional<int> M) {
  if (D < 1) throw std::invalid_argument("density_test needs D >= 1");
  const auto pts = distinct_points(orbit);
  const int need = monomial_count(D);
  if (static_cast<int>(pts.size()) < need) throw InsufficientPoints(static_cast<int>(pts.size()), need);
  int m = std::min(M.value_or(need + 6), static_cast<int>(pts.size()));
  if (m < need) throw InsufficientPoints(m, need);
  const std::vector<Point> used(pts.begin(), pts.begin() + m);

  const auto monos = monomials_up_to(D);
  std::vector<std::vector<Integer>> rows;
  for (const auto& [a, b] : used) {
    std::vector<Rational> row;
    Integer l = 1;
    for (const auto& mo : monos) {
      Rational v = 1;
      for (int k = 0; k < mo.i; ++k) v *= a;
      for (int k = 0; k < mo.j; ++k) v *= b;
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
      row.push_back(v);
    }
    std::vector<Integer> irow;
    for (const auto& v : row) irow.push_back(Integer(v * l));
    rows.push_back(std::move(irow));
  }

  DensityCertificate cert;
  cert.D = D;
  cert.M = m;
  const Echelon e = bareiss_echelon(std::move(rows));
  cert.rank = e.rank;
  cert.pivots = e.pivots;
  if (e.rank == need) return cert;

  const auto k = first_kernel_vector(e, need);
  Poly2 w;
  for (int c = 0; c < need; ++c) w += Poly2::monomial(monos[c].i, monos[c].j, Rational((*k)[c]));
  w = w.primitive();
  if (!vanishes_on(w, used)) throw std::logic_error("kernel witness does not vanish on the orbit");
  cert.verdict = DensityVerdict::curve_found;
  cert.witness = w;
  return cert;
}

int distinct_count(const OrbitRecord& orbit) { return static_cast<int>(distinct_points(orbit).size()); }

std::vector<DensityCertificate> density_scan(const Endo2& f, const Point& p, int D_max,
                                             long height_cap) {
  return density_scan(iterate_orbit(f, p, monomial_count(D_max) + 6 - 1, height_cap), D_max);
}

std::vector<DensityCertificate> density_scan(const OrbitRecord& orbit, int D_max) {
  std::vector<DensityCertificate> out;
  for (int D = 1; D <= D_max; ++D) {
    out.push_back(density_test(orbit, D));
    auto& c = out.back();
    if (c.verdict != DensityVerdict::curve_found) continue;
    // Drop factors that are not needed to cover the used points.
    const auto pts = distinct_points(orbit);
    const std::vector<Point> used(pts.begin(), pts.begin() + c.M);
    std::vector<Poly2> parts;
    for (const auto& [q, mult] : factor(*c.witness).factors) parts.push_back(q);
    for (std::size_t i = 0; i < parts.size() && parts.size() > 1;) {
      Poly2 rest(1L);
      for (std::size_t j = 0; j < parts.size(); ++j)
        if (j != i) rest *= parts[j];
      if (vanishes_on(rest, used)) parts.erase(parts.begin() + static_cast<long>(i));
      else ++i;
    }
    Poly2 w(1L);
    for (const auto& q : parts) w *= q;
    c.witness = w.primitive();
    break;
  }
  return out;
}

}  // namespace affdyn
