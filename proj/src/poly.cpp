#include <affdyn/poly.hpp>
#include <affdyn/upoly.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace affdyn {

Poly2::Poly2(long c) {
  if (c != 0) terms_.emplace(Monomial{0, 0}, Rational(c));
}

Poly2::Poly2(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{0, 0}, c);
}

Poly2 Poly2::x() { return monomial(1, 0); }
Poly2 Poly2::y() { return monomial(0, 1); }

Poly2 Poly2::monomial(int i, int j, const Rational& c) {
  Poly2 p;
  p.add_term(i, j, c);
  return p;
}

void Poly2::add_term(int i, int j, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool Poly2::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
}

int Poly2::degree() const {
  return terms_.empty() ? kDegreeOfZero : terms_.begin()->first.degree();
}

int Poly2::degree_x() const {
  int d = kDegreeOfZero;
  for (const auto& [m, c] : terms_) d = std::max(d, m.i);
  return d;
}

int Poly2::degree_y() const {
  int d = kDegreeOfZero;
  for (const auto& [m, c] : terms_) d = std::max(d, m.j);
  return d;
}

Rational Poly2::coeff(int i, int j) const {
  auto it = terms_.find(Monomial{i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

Monomial Poly2::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

Rational Poly2::leading_coefficient() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second;
}

Poly2 Poly2::homogeneous_part(int d) const {
  Poly2 r;
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) r.terms_.emplace(m, c);
  return r;
}

Poly2 Poly2::dx() const {
  Poly2 r;
  for (const auto& [m, c] : terms_)
    if (m.i > 0) r.add_term(m.i - 1, m.j, c * m.i);
  return r;
}

Poly2 Poly2::dy() const {
  Poly2 r;
  for (const auto& [m, c] : terms_)
    if (m.j > 0) r.add_term(m.i, m.j - 1, c * m.j);
  return r;
}

Poly2 Poly2::pow(unsigned e) const {
  Poly2 result(1L);
  Poly2 base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly2 Poly2::scaled(const Rational& c) const {
  if (sgn(c) == 0) return {};
  Poly2 r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

Poly2 Poly2::swapped() const {
  Poly2 r;
  for (const auto& [m, c] : terms_) r.add_term(m.j, m.i, c);
  return r;
}

Rational Poly2::eval(const Rational& a, const Rational& b) const {
  if (terms_.empty()) return 0;
  int dx = degree_x(), dy = degree_y();
  std::vector<Rational> pa(dx + 1), pb(dy + 1);
  pa[0] = 1;
  pb[0] = 1;
  for (int k = 1; k <= dx; ++k) pa[k] = pa[k - 1] * a;
  for (int k = 1; k <= dy; ++k) pb[k] = pb[k - 1] * b;
  Rational s = 0;
  for (const auto& [m, c] : terms_) s += c * pa[m.i] * pb[m.j];
  return s;
}

Poly2 Poly2::primitive(Rational* factor) const {
  if (terms_.empty()) {
    if (factor) *factor = 1;
    return {};
  }
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational s(den_lcm, num_gcd);
  s.canonicalize();
  if (sgn(leading_coefficient()) < 0) s = -s;
  if (factor) *factor = s;
  return scaled(s);
}

Poly2 Poly2::monic() const {
  if (terms_.empty()) return {};
  return scaled(1 / leading_coefficient());
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, -c);
  return *this;
}

Poly2& Poly2::operator*=(const Poly2& o) {
  *this = *this * o;
  return *this;
}

Poly2 Poly2::operator-() const { return scaled(-1); }

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  if (a.is_zero() || b.is_zero()) return r;
  // Dense accumulation keeps the inner loop free of map lookups.
  int ax = a.degree_x(), ay = a.degree_y(), bx = b.degree_x(), by = b.degree_y();
  int w = ay + by + 1;
  const std::size_t box = static_cast<std::size_t>(ax + bx + 1) * w;
  if (box > 4 * a.terms_.size() * b.terms_.size() + 64) {
    // Sparse product (e.g. monomials of high degree).
    Rational tmp;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
        r.terms_[Monomial{ma.i + mb.i, ma.j + mb.j}] += tmp;
      }
    std::erase_if(r.terms_, [](const auto& t) { return sgn(t.second) == 0; });
    return r;
  }
  std::vector<Rational> acc(box);
  std::vector<char> used(acc.size(), 0);
  Rational tmp;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      std::size_t k = static_cast<std::size_t>(ma.i + mb.i) * w + (ma.j + mb.j);
      mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      acc[k] += tmp;
      used[k] = 1;
    }
  }
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (used[k] && sgn(acc[k]) != 0)
      r.terms_.emplace(Monomial{static_cast<int>(k / w), static_cast<int>(k % w)},
                       std::move(acc[k]));
  }
  return r;
}

bool operator==(const Poly2& a, const Poly2& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [m, c] : a.terms_) {
    if (!(it->first == m) || it->second != c) return false;
    ++it;
  }
  return true;
}

namespace {

void append_atom(std::ostringstream& os, const char* name, int e, bool& first_atom) {
  if (e == 0) return;
  if (!first_atom) os << '*';
  os << name;
  if (e > 1) os << '^' << e;
  first_atom = false;
}

}  // namespace

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool first_atom = true;
    if (a != 1 || m.degree() == 0) {
      os << a.get_str();
      first_atom = false;
    }
    append_atom(os, "x", m.i, first_atom);
    append_atom(os, "y", m.j, first_atom);
  }
  return os.str();
}

std::pair<Poly2, Poly2> divmod(const Poly2& a, const Poly2& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly2 q, r, p = a;
  const Monomial lb = b.leading_monomial();
  const Rational cb = b.leading_coefficient();
  while (!p.is_zero()) {
    Monomial lp = p.leading_monomial();
    Rational cp = p.leading_coefficient();
    if (lp.i >= lb.i && lp.j >= lb.j) {
      Poly2 t = Poly2::monomial(lp.i - lb.i, lp.j - lb.j, cp / cb);
      q += t;
      p -= t * b;
    } else {
      r.add_term(lp.i, lp.j, cp);
      p.add_term(lp.i, lp.j, -cp);
    }
  }
  return {q, r};
}

Poly2 divide_exact(const Poly2& a, const Poly2& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

bool divides(const Poly2& d, const Poly2& a) {
  if (d.is_zero()) return a.is_zero();
  return divmod(a, d).second.is_zero();
}

namespace {

/// base^e for every exponent e in `needed`: successive products when the
/// exponents are dense, binary powering when few high powers are needed.
std::map<int, Poly2> powers(const Poly2& base, const std::set<int>& needed) {
  std::map<int, Poly2> out;
  if (needed.empty()) return out;
  const int top = *needed.rbegin();
  int bits = 1;
  while ((1 << bits) <= top) ++bits;
  if (static_cast<long>(needed.size()) * 2 * bits < top) {
    for (int e : needed) out.emplace(e, base.pow(e));
    return out;
  }
  Poly2 acc(1L);
  for (int e = 0; e <= top; ++e) {
    if (e > 0) acc *= base;
    if (needed.count(e)) out.emplace(e, acc);
  }
  return out;
}

}  // namespace

Poly2 compose(const Poly2& p, const Poly2& f, const Poly2& g) {
  if (p.is_zero()) return {};
  std::set<int> is, js;
  for (const auto& [m, c] : p.terms()) {
    is.insert(m.i);
    js.insert(m.j);
  }
  const auto fp = powers(f, is), gp = powers(g, js);
  Poly2 r;
  for (const auto& [m, c] : p.terms()) r += (fp.at(m.i) * gp.at(m.j)).scaled(c);
  return r;
}

namespace {

/// Determinant by fraction-free (Bareiss) elimination over Q[x, y].
Poly2 bareiss_det(std::vector<std::vector<Poly2>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly2(1L);
  Poly2 prev(1L);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return {};
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly2 t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = divide_exact(t, prev);
      }
      m[i][k] = Poly2();
    }
    prev = m[k][k];
  }
  Poly2 d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

/// Coefficients of p as a polynomial in `var`, index = power.
std::vector<Poly2> coeffs_in(const Poly2& p, Var var) {
  int d = var == Var::x ? p.degree_x() : p.degree_y();
  std::vector<Poly2> c(std::max(d, 0) + 1);
  for (const auto& [m, a] : p.terms()) {
    if (var == Var::x)
      c[m.i].add_term(0, m.j, a);
    else
      c[m.j].add_term(m.i, 0, a);
  }
  return c;
}

}  // namespace

Poly2 resultant(const Poly2& p, const Poly2& q, Var var) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
  auto a = coeffs_in(p, var);
  auto b = coeffs_in(q, var);
  const int m = static_cast<int>(a.size()) - 1;
  const int n = static_cast<int>(b.size()) - 1;
  if (m == 0 && n == 0) throw std::invalid_argument("nothing to eliminate");
  const int size = m + n;
  std::vector<std::vector<Poly2>> s(size, std::vector<Poly2>(size));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[r][r + k] = a[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[n + r][r + k] = b[n - k];
  return bareiss_det(std::move(s));
}

namespace {

UPoly content_of(const std::vector<UPoly>& c) {
  UPoly g;
  for (const auto& u : c) g = gcd(g, u);
  return g;
}

std::vector<UPoly> primitive_part(const std::vector<UPoly>& c, const UPoly& content) {
  std::vector<UPoly> r;
  r.reserve(c.size());
  for (const auto& u : c) r.push_back(divmod(u, content).first);
  return r;
}

/// Pseudo-remainder of a by b in Q[y][x].
std::vector<UPoly> pseudo_remainder(std::vector<UPoly> a, const std::vector<UPoly>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const UPoly& lb = b.back();
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int da = static_cast<int>(a.size()) - 1;
    UPoly la = a.back();
    for (auto& u : a) u = u * lb;
    for (int k = 0; k <= db; ++k) a[da - db + k] -= la * b[k];
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return a;
}

}  // namespace

Poly2 gcd(const Poly2& a, const Poly2& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.size() == 1 || b.size() == 1) {
    // The divisors of a monomial are monomials.
    int i = std::numeric_limits<int>::max(), j = i;
    for (const Poly2* p : {&a, &b})
      for (const auto& [m, c] : p->terms()) {
        i = std::min(i, m.i);
        j = std::min(j, m.j);
      }
    return Poly2::monomial(i, j);
  }
  auto ca = coeffs_in_x(a);
  auto cb = coeffs_in_x(b);
  UPoly conta = content_of(ca), contb = content_of(cb);
  UPoly cont = gcd(conta, contb);
  auto pa = primitive_part(ca, conta);
  auto pb = primitive_part(cb, contb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  std::vector<UPoly> g;
  for (;;) {
    if (pb.size() <= 1) {
      g = {UPoly(1)};
      break;
    }
    auto r = pseudo_remainder(pa, pb);
    if (r.empty()) {
      g = pb;
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, content_of(r));
  }
  Poly2 result = from_coeffs_in_x(g) * to_poly2(cont, Var::y);
  return result.primitive();
}

Endo2::Endo2(Poly2 f, Poly2 g) : f_(std::move(f)), g_(std::move(g)) {
  if (jacobian_det(f_, g_).is_zero())
    throw std::invalid_argument("map is not dominant: Jacobian determinant vanishes");
}

Endo2 Endo2::identity() { return Endo2(Poly2::x(), Poly2::y()); }

int Endo2::degree() const { return std::max(f_.degree(), g_.degree()); }

Endo2 Endo2::then(const Endo2& other) const {
  return Endo2(compose(other.f_, f_, g_), compose(other.g_, f_, g_));
}

Endo2 Endo2::after(const Endo2& inner) const { return inner.then(*this); }

std::pair<Rational, Rational> Endo2::operator()(const Rational& a, const Rational& b) const {
  return {f_.eval(a, b), g_.eval(a, b)};
}

std::string Endo2::to_string() const { return "(" + f_.to_string() + ", " + g_.to_string() + ")"; }

Poly2 compose(const Poly2& g, const Endo2& f) { return compose(g, f.F(), f.G()); }

Poly2 jacobian_det(const Poly2& f, const Poly2& g) { return f.dx() * g.dy() - f.dy() * g.dx(); }

Poly2 jacobian_det(const Endo2& f) { return jacobian_det(f.F(), f.G()); }

Endo2 iterate_endo(const Endo2& f, int n, int degree_cap) {
  if (n < 0) throw std::invalid_argument("negative iterate");
  Endo2 r = Endo2::identity();
  for (int k = 1; k <= n; ++k) {
    r = r.then(f);
    if (r.degree() > degree_cap) throw DegreeCapExceeded(k, r.degree());
  }
  return r;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Poly2 parse_all() {
    Poly2 p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

  Poly2 expr() {
    skip();
    bool neg = false;
    if (peek() == '+' || peek() == '-') {
      neg = peek() == '-';
      ++pos_;
    }
    Poly2 acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Poly2 t = term();
      if (c == '+')
        acc += t;
      else
        acc -= t;
    }
    return acc;
  }

  std::size_t pos() const { return pos_; }

 private:
  Poly2 term() {
    Poly2 acc = factor();
    for (;;) {
      skip();
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (c == 'x' || c == 'y' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc *= factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly2 factor() {
    Poly2 base = atom();
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      Integer e = integer();
      if (!e.fits_uint_p()) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Poly2 atom() {
    skip();
    char c = peek();
    if (c == 'x') {
      ++pos_;
      return Poly2::x();
    }
    if (c == 'y') {
      ++pos_;
      return Poly2::y();
    }
    if (c == '(') {
      ++pos_;
      Poly2 p = expr();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer();
      skip();
      if (peek() == '/') {
        ++pos_;
        skip();
        std::size_t at = pos_;
        Integer den = integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        Rational q(num, den);
        q.canonicalize();
        return Poly2(q);
      }
      return Poly2(Rational(num));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Integer integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly2 parse_poly(std::string_view text) { return Parser(text).parse_all(); }

Endo2 parse_endo(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t\n\r");
  std::size_t e = text.find_last_not_of(" \t\n\r");
  if (b == std::string_view::npos) throw ParseError("empty map", 0);
  std::string_view body = text.substr(b, e - b + 1);
  std::size_t offset = b;
  // Strip one pair of outer parentheses if they enclose the whole text.
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
    int depth = 0;
    bool encloses = true;
    for (std::size_t k = 0; k < body.size(); ++k) {
      if (body[k] == '(') ++depth;
      if (body[k] == ')') --depth;
      if (depth == 0 && k + 1 < body.size()) {
        encloses = false;
        break;
      }
    }
    if (encloses) {
      body = body.substr(1, body.size() - 2);
      offset += 1;
    }
  }
  int depth = 0;
  std::size_t comma = std::string_view::npos;
  for (std::size_t k = 0; k < body.size(); ++k) {
    if (body[k] == '(') ++depth;
    if (body[k] == ')') --depth;
    if (body[k] == ',' && depth == 0) {
      if (comma != std::string_view::npos) throw ParseError("too many components", offset + k);
      comma = k;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses", offset + body.size());
  if (comma == std::string_view::npos) throw ParseError("expected ',' between components", offset);
  Poly2 f, g;
  try {
    f = parse_poly(body.substr(0, comma));
  } catch (const ParseError& err) {
    throw ParseError("first component: " + std::string(err.what()), offset + err.position());
  }
  try {
    g = parse_poly(body.substr(comma + 1));
  } catch (const ParseError& err) {
    throw ParseError("second component: " + std::string(err.what()),
                     offset + comma + 1 + err.position());
  }
  return Endo2(std::move(f), std::move(g));
}

}  // namespace affdyn
