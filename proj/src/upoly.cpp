#include <affdyn/upoly.hpp>

#include <algorithm>
#include <sstream>

namespace affdyn {

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UPoly UPoly::monomial(int k, const Rational& a) {
  std::vector<Rational> c(k + 1);
  c[k] = a;
  return UPoly(std::move(c));
}

Rational UPoly::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return {};
  return scaled(1 / c_.back());
}

Rational UPoly::eval(const Rational& t) const {
  Rational s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
  return s;
}

UPoly UPoly::shifted(const Rational& a) const {
  // Horner with polynomial argument (t + a).
  UPoly r;
  UPoly lin({a, 1});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + UPoly({*it});
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::operator-() const { return scaled(-1); }

UPoly UPoly::scaled(const Rational& s) const {
  if (sgn(s) == 0) return {};
  UPoly r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

std::string UPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[k];
    if (sgn(a) == 0) continue;
    Rational m = abs(a);
    if (first)
      os << (sgn(a) < 0 ? "-" : "");
    else
      os << (sgn(a) < 0 ? " - " : " + ");
    first = false;
    if (m != 1 || k == 0) {
      os << m.get_str();
      if (k > 0) os << '*';
    }
    if (k > 0) os << var;
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> r = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  std::vector<Rational> q(a.degree() - db + 1);
  const Rational inv = 1 / b.lc();
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    Rational f = r[k] * inv;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * bc[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b, s0 = 1, s1, t0, t1 = 1;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.lc();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

bool is_squarefree(const UPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

Poly2 to_poly2(const UPoly& p, Var var) {
  Poly2 r;
  for (int k = 0; k <= p.degree(); ++k) {
    if (var == Var::x)
      r.add_term(k, 0, p[k]);
    else
      r.add_term(0, k, p[k]);
  }
  return r;
}

UPoly to_upoly(const Poly2& p, Var var) {
  if (p.is_zero()) return {};
  int d = var == Var::x ? p.degree_x() : p.degree_y();
  std::vector<Rational> c(d + 1);
  for (const auto& [m, a] : p.terms()) {
    if ((var == Var::x && m.j != 0) || (var == Var::y && m.i != 0))
      throw std::invalid_argument("polynomial is not univariate");
    c[var == Var::x ? m.i : m.j] = a;
  }
  return UPoly(std::move(c));
}

std::vector<UPoly> coeffs_in_x(const Poly2& p) {
  if (p.is_zero()) return {};
  std::vector<std::vector<Rational>> c(p.degree_x() + 1);
  for (const auto& [m, a] : p.terms()) {
    auto& v = c[m.i];
    if (static_cast<int>(v.size()) <= m.j) v.resize(m.j + 1);
    v[m.j] = a;
  }
  std::vector<UPoly> r;
  r.reserve(c.size());
  for (auto& v : c) r.emplace_back(std::move(v));
  return r;
}

Poly2 from_coeffs_in_x(const std::vector<UPoly>& c) {
  Poly2 r;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int j = 0; j <= c[i].degree(); ++j) r.add_term(static_cast<int>(i), j, c[i][j]);
  return r;
}

std::vector<Rational> rational_roots(const UPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  auto fac = factor_univariate(p);
  for (const auto& [f, e] : fac.factors)
    if (f.degree() == 1) roots.push_back(-f[0] / f[1]);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace affdyn
