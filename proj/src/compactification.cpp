#include <affdyn/compactification.hpp>

#include <algorithm>

namespace affdyn {
namespace {

int low_degree(const Poly2& p) {
  if (p.is_zero()) throw std::domain_error("order of the zero polynomial");
  int d = std::numeric_limits<int>::max();
  for (const auto& [m, c] : p.terms()) d = std::min(d, m.degree());
  return d;
}

/// Order of vanishing at the chart origin.
int order_at_origin(const RationalFn2& f) { return low_degree(f.num()) - low_degree(f.den()); }

Chart root_chart(const std::optional<Rational>& m) {
  const Poly2 u = Poly2::x(), v = Poly2::y();
  Chart c{RationalFn2(Poly2()), RationalFn2(Poly2()), RationalFn2(Poly2())};
  c.u_div = 0;
  if (!m) {
    // [0:1:0]: u = Z/Y, v = X/Y.
    c.x = RationalFn2(v, u);
    c.y = RationalFn2(1, u);
    c.jacobian = RationalFn2(1, u.pow(3));
    c.monomial = true;
  } else {
    // [1:m:0]: u = Z/X, v = Y/X − m.
    c.x = RationalFn2(1, u);
    c.y = RationalFn2(v + Poly2(*m), u);
    c.jacobian = RationalFn2(-1, u.pow(3));
    c.monomial = sgn(*m) == 0;
  }
  return c;
}

std::string position_string(const std::optional<Rational>& p) { return p ? p->get_str() : "inf"; }

}  // namespace

Compactification Compactification::plane() {
  Compactification X;
  DivisorRecord l;
  l.ord_x = -1;
  l.ord_y = -1;
  l.ord_omega = -3;
  l.b = 1;
  l.toric = true;
  X.divisors_.push_back(l);
  X.creation_charts_.push_back(Chart{RationalFn2(Poly2()), RationalFn2(Poly2()), RationalFn2(Poly2())});
  X.m_ = {{Rational(1)}};
  return X;
}

BoundaryPoint Compactification::resolve(BoundaryPoint p) const {
  if (p.divisor < 0 || p.divisor >= size()) throw std::out_of_range("no such divisor");
  for (auto it = blown_up_.find(p); it != blown_up_.end(); it = blown_up_.find(p)) {
    const Chart& c = creation_charts_[it->second];
    std::optional<Rational> pos;
    if (c.u_div != p.divisor) pos = Rational(0);
    p = BoundaryPoint{it->second, pos};
  }
  return p;
}

std::optional<BoundaryPoint> Compactification::intersection_point(int e, int f) const {
  if (e == f || sgn(intersection(e, f)) == 0) return std::nullopt;
  int newer = std::max(e, f), older = std::min(e, f);
  const Chart& c = creation_charts_[newer];
  std::optional<Rational> pos;
  if (c.u_div != older) pos = Rational(0);
  return resolve(BoundaryPoint{newer, pos});
}

Chart Compactification::point_chart(BoundaryPoint p) const {
  p = resolve(p);
  if (p.divisor == 0) return root_chart(p.position);
  const Chart& cp = creation_charts_[p.divisor];
  const Poly2 u = Poly2::x(), v = Poly2::y();
  Chart c = cp;
  Poly2 det;
  std::optional<Endo2> sub;
  if (p.position) {
    // u = u', v = u'(v' + c)
    sub.emplace(u, u * (v + Poly2(*p.position)));
    det = u;
    c.v_div = sgn(*p.position) == 0 ? cp.v_div : -1;
    c.monomial = cp.monomial && sgn(*p.position) == 0;
  } else {
    // u = u'v', v = u'
    sub.emplace(u * v, u);
    det = -u;
    c.v_div = cp.u_div;
  }
  c.u_div = p.divisor;
  c.x = cp.x.compose(*sub);
  c.y = cp.y.compose(*sub);
  c.jacobian = cp.jacobian.compose(*sub) * RationalFn2(det);
  return c;
}

Compactification Compactification::blow_up(BoundaryPoint p) const {
  p = resolve(p);
  Chart c = point_chart(p);
  DivisorRecord d;
  d.ord_x = order_at_origin(c.x);
  d.ord_y = order_at_origin(c.y);
  d.ord_omega = order_at_origin(c.jacobian) + 1;
  d.b = -std::min(d.ord_x, d.ord_y);
  if (d.b <= 0) throw std::logic_error("blown-up point is not at infinity");
  d.center = p;
  for (int q : {c.u_div, c.v_div})
    if (q >= 0) d.parents.push_back(q);
  d.toric = c.monomial;

  Compactification X = *this;
  const int n = size();
  for (auto& row : X.m_) row.emplace_back(0);
  X.m_.emplace_back(n + 1, Rational(0));
  X.m_[n][n] = -1;
  for (int q : d.parents) {
    X.m_[n][q] = X.m_[q][n] = 1;
    X.m_[q][q] -= 1;
  }
  if (d.parents.size() == 2) X.m_[d.parents[0]][d.parents[1]] = X.m_[d.parents[1]][d.parents[0]] = 0;
  X.divisors_.push_back(d);
  X.creation_charts_.push_back(std::move(c));
  X.blown_up_[p] = n;
  return X;
}

Compactification Compactification::blow_up_satellite(int e, int f) const {
  auto p = intersection_point(e, f);
  if (!p) throw std::invalid_argument("divisors do not meet");
  return blow_up(*p);
}

std::vector<Rational> Compactification::dual_divisor(int e) const {
  const int n = size();
  std::vector<std::vector<Rational>> a = m_;
  for (int i = 0; i < n; ++i) a[i].push_back(i == e ? 1 : 0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw std::domain_error("singular intersection matrix");
    std::swap(a[piv], a[col]);
    for (int i = 0; i < n; ++i) {
      if (i == col || sgn(a[i][col]) == 0) continue;
      Rational f = a[i][col] / a[col][col];
      for (int j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> c(n);
  for (int i = 0; i < n; ++i) c[i] = a[i][n] / a[i][i];
  return c;
}

Rational Compactification::skewness(int e) const {
  // Ě·Ě = Σ c_F (F·Ě) = c_E.
  const Rational self = dual_divisor(e)[e];
  const int b = divisor(e).b;
  return self / (Rational(b) * b);
}

Rational Compactification::thinness(int e) const {
  const auto& d = divisor(e);
  return frac(1 + d.ord_omega, d.b);
}

ExtRational Compactification::ord(int e, const Poly2& p) const {
  if (p.is_zero()) return ExtRational::infinity();
  if (e == 0) return Rational(-p.degree());
  const Chart& c = creation_charts_.at(e);
  // P(Nx/Dx, Ny/Dy) over the common denominator Dx^dx Dy^dy.
  const int dx = p.degree_x(), dy = p.degree_y();
  const Poly2 &nx = c.x.num(), &ddx = c.x.den(), &ny = c.y.num(), &ddy = c.y.den();
  std::vector<Poly2> nxp{1}, dxp{1}, nyp{1}, dyp{1};
  for (int k = 0; k < dx; ++k) {
    nxp.push_back(nxp.back() * nx);
    dxp.push_back(dxp.back() * ddx);
  }
  for (int k = 0; k < dy; ++k) {
    nyp.push_back(nyp.back() * ny);
    dyp.push_back(dyp.back() * ddy);
  }
  Poly2 num;
  for (const auto& [m, a] : p.terms())
    num += (nxp[m.i] * dxp[dx - m.i] * nyp[m.j] * dyp[dy - m.j]).scaled(a);
  return Rational(low_degree(num) - dx * low_degree(ddx) - dy * low_degree(ddy));
}

std::optional<std::pair<Rational, Rational>> Compactification::monomial_weights(int e) const {
  const auto& d = divisor(e);
  if (!d.toric) return std::nullopt;
  return std::make_pair(frac(-d.ord_x, d.b), frac(-d.ord_y, d.b));
}

nlohmann::json Compactification::to_json() const {
  nlohmann::json divs = nlohmann::json::array();
  for (int e = 0; e < size(); ++e) {
    const auto& d = divisors_[e];
    nlohmann::json j;
    j["index"] = e;
    j["parents"] = d.parents;
    if (d.center)
      j["center"] = {{"divisor", d.center->divisor}, {"position", position_string(d.center->position)}};
    else
      j["center"] = nullptr;
    j["ord_x"] = d.ord_x;
    j["ord_y"] = d.ord_y;
    j["ord_omega"] = d.ord_omega;
    j["b"] = d.b;
    j["self_intersection"] = m_[e][e].get_num().get_si();
    j["toric"] = d.toric;
    divs.push_back(j);
  }
  nlohmann::json mat = nlohmann::json::array();
  for (const auto& row : m_) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(v.get_num().get_si());
    mat.push_back(r);
  }
  return {{"divisors", divs}, {"intersection_matrix", mat}};
}

std::pair<Compactification, int> Compactification::monomial_chain(const Rational& s,
                                                                  const Rational& t) {
  if (sgn(s) < 0 || sgn(t) < 0 || std::max(s, t) != 1)
    throw std::invalid_argument("monomial weights must satisfy s, t >= 0 and max(s, t) = 1");
  Compactification X = plane();
  if (s == 1 && t == 1) return {X, 0};
  // Weights (a, b) on the chart coordinates (u, v) at the boundary point;
  // the target is (q, q − p) for the non-unit weight p/q.
  const Rational r = (t == 1) ? s : t;
  std::optional<Rational> root_pos;
  if (t != 1) root_pos = Rational(0);
  const Integer q = r.get_den(), p = r.get_num();
  const std::pair<Integer, Integer> target{q, q - p};

  struct Side {
    int div;  // −1: the coordinate axis {v = 0}, not a boundary divisor
    std::pair<Integer, Integer> w;
  };
  Side left{0, {1, 0}}, right{-1, {0, 1}};
  X = X.blow_up(BoundaryPoint{0, root_pos});
  Side mid{X.size() - 1, {1, 1}};
  while (mid.w != target) {
    // Compare ratios b/a of target and mediant.
    if (target.second * mid.w.first < mid.w.second * target.first) {
      right = mid;
      X = X.blow_up_satellite(left.div, mid.div);
    } else {
      left = mid;
      if (right.div < 0)
        X = X.blow_up(BoundaryPoint{mid.div, Rational(0)});
      else
        X = X.blow_up_satellite(mid.div, right.div);
    }
    mid = Side{X.size() - 1, {left.w.first + right.w.first, left.w.second + right.w.second}};
  }
  return {X, mid.div};
}

}  // namespace affdyn
