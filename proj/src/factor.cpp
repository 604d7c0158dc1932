// Bivariate factorization over Q. After a linear shear the input has a
// constant leading coefficient in x; each squarefree part is then reduced to
// a univariate factorization at a good y-value and lifted y-adically.

#include <affdyn/factor.hpp>
#include <affdyn/upoly.hpp>

#include <algorithm>
#include <numeric>

namespace affdyn {
namespace {

/// Drop every term whose y-exponent is >= k.
Poly2 truncate_y(const Poly2& p, int k) {
  Poly2 r;
  for (const auto& [m, c] : p.terms())
    if (m.j < k) r.add_term(m.i, m.j, c);
  return r;
}

UPoly y_coefficient(const Poly2& p, int k) {
  std::vector<Rational> c(p.is_zero() ? 0 : p.degree_x() + 1);
  for (const auto& [m, a] : p.terms())
    if (m.j == k) c[m.i] = a;
  return UPoly(std::move(c));
}

/// Coefficient of x^deg_x as a univariate polynomial in y.
UPoly lc_in_x(const Poly2& p) {
  int d = p.degree_x();
  std::vector<Rational> c(p.degree_y() + 1);
  for (const auto& [m, a] : p.terms())
    if (m.i == d) c[m.j] = a;
  return UPoly(std::move(c));
}

/// Irreducible factors of s, which is squarefree with constant leading
/// coefficient in x and x-degree equal to its total degree.
std::vector<Poly2> factor_squarefree_monic(const Poly2& s) {
  if (s.degree() <= 1) return {s};
  const Poly2 y = Poly2::y();
  // A shift y -> y + b keeping the specialization at y = 0 squarefree.
  Poly2 t;
  long b = 0;
  for (long k = 0;; ++k) {
    b = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    UPoly u = to_upoly(compose(s, Poly2::x(), Poly2(b)), Var::x);
    if (is_squarefree(u)) break;
  }
  t = compose(s, Poly2::x(), y + Poly2(b));
  t = t.scaled(1 / lc_in_x(t).lc());
  UPoly u0 = to_upoly(compose(t, Poly2::x(), Poly2(0)), Var::x);
  auto uf = factor_univariate(u0);
  std::vector<UPoly> u;
  for (const auto& [f, e] : uf.factors) u.push_back(f);
  if (u.size() == 1) return {s};

  const std::size_t r = u.size();
  const int prec = t.degree_y() + 1;
  std::vector<UPoly> sinv(r);
  for (std::size_t i = 0; i < r; ++i) {
    UPoly others = 1;
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = others * u[j];
    sinv[i] = extended_gcd(others, u[i]).s;
  }
  std::vector<Poly2> f;
  for (const auto& ui : u) f.push_back(to_poly2(ui, Var::x));
  for (int k = 1; k < prec; ++k) {
    Poly2 prod = 1;
    for (const auto& fi : f) prod = truncate_y(prod * fi, k + 1);
    UPoly e = y_coefficient(t - prod, k);
    if (e.is_zero()) continue;
    for (std::size_t i = 0; i < r; ++i) {
      UPoly delta = divmod(e * sinv[i], u[i]).second;
      f[i] += to_poly2(delta, Var::x) * Poly2::monomial(0, k);
    }
  }

  std::vector<Poly2> found;
  std::vector<std::size_t> remaining(r);
  std::iota(remaining.begin(), remaining.end(), 0);
  Poly2 cur = t;
  std::size_t sz = 1;
  while (2 * sz <= remaining.size()) {
    bool hit = false;
    std::vector<bool> pick(remaining.size(), false);
    std::fill(pick.begin(), pick.begin() + sz, true);
    do {
      Poly2 cand = 1;
      for (std::size_t q = 0; q < remaining.size(); ++q)
        if (pick[q]) cand = truncate_y(cand * f[remaining[q]], prec);
      auto [quo, rem] = divmod(cur, cand);
      if (rem.is_zero()) {
        found.push_back(cand);
        cur = quo;
        std::vector<std::size_t> rest;
        for (std::size_t q = 0; q < remaining.size(); ++q)
          if (!pick[q]) rest.push_back(remaining[q]);
        remaining = std::move(rest);
        hit = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!hit) ++sz;
  }
  if (!cur.is_constant()) found.push_back(cur);
  for (auto& g : found) g = compose(g, Poly2::x(), y - Poly2(b));
  return found;
}

bool factor_less(const std::pair<Poly2, int>& a, const std::pair<Poly2, int>& b) {
  GrlexDescending order;
  const auto& ta = a.first.terms();
  const auto& tb = b.first.terms();
  auto ia = ta.begin(), ib = tb.begin();
  for (; ia != ta.end() && ib != tb.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return order(ia->first, ib->first);
    if (ia->second != ib->second) return ia->second > ib->second;
  }
  if (ia != ta.end() || ib != tb.end()) return ib == tb.end() && ia != ta.end();
  return a.second < b.second;
}

}  // namespace

Poly2 Factorization::expand() const {
  Poly2 r = unit;
  for (const auto& [f, e] : factors) r *= f.pow(static_cast<unsigned>(e));
  return r;
}

Factorization factor(const Poly2& p, int degree_cap) {
  if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  if (p.degree() > degree_cap) throw FactorCapExceeded(p.degree(), degree_cap);
  Factorization out;
  // Monomial content first.
  int mx = std::numeric_limits<int>::max(), my = mx;
  for (const auto& [m, c] : p.terms()) {
    mx = std::min(mx, m.i);
    my = std::min(my, m.j);
  }
  Poly2 q;
  for (const auto& [m, c] : p.terms()) q.add_term(m.i - mx, m.j - my, c);
  if (mx > 0) out.factors.emplace_back(Poly2::x(), mx);
  if (my > 0) out.factors.emplace_back(Poly2::y(), my);

  if (!q.is_constant()) {
    const int d = q.degree();
    const Poly2 top = q.homogeneous_part(d);
    long a = 0;
    for (long k = 0;; ++k) {
      a = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
      if (sgn(top.eval(1, a)) != 0) break;
    }
    const Poly2 x = Poly2::x(), y = Poly2::y();
    Poly2 sh = compose(q, x, y + x.scaled(a));
    sh = sh.scaled(1 / sh.coeff(d, 0));

    // Yun's squarefree decomposition in x.
    std::vector<std::pair<Poly2, int>> parts;
    Poly2 g0 = gcd(sh, sh.dx());
    Poly2 bb = divide_exact(sh, g0);
    Poly2 cc = divide_exact(sh.dx(), g0);
    Poly2 dd = cc - bb.dx();
    int mult = 1;
    while (!bb.is_constant()) {
      Poly2 g = gcd(bb, dd);
      if (!g.is_constant()) parts.emplace_back(g, mult);
      bb = divide_exact(bb, g);
      cc = divide_exact(dd, g);
      dd = cc - bb.dx();
      ++mult;
    }
    for (const auto& [s, e] : parts) {
      Poly2 sm = s.scaled(1 / s.coeff(s.degree(), 0));
      for (auto& h : factor_squarefree_monic(sm))
        out.factors.emplace_back(compose(h, x, y - x.scaled(a)).primitive(), e);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), factor_less);
  Poly2 prod = 1;
  for (const auto& [f, e] : out.factors) prod *= f.pow(static_cast<unsigned>(e));
  out.unit = p.leading_coefficient() / prod.leading_coefficient();
  return out;
}

std::vector<Poly2> irreducible_components(const Poly2& p, int degree_cap) {
  std::vector<Poly2> r;
  for (auto& [f, e] : factor(p, degree_cap).factors) r.push_back(f);
  return r;
}

}  // namespace affdyn
