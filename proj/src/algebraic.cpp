#include <affdyn/algebraic.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace affdyn {
namespace {

Rational rpow(const Rational& x, int n) {
  Rational r = 1;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> s{p, p.derivative()};
  while (!s.back().is_zero() && s.back().degree() > 0) {
    UPoly r = divmod(s[s.size() - 2], s.back()).second;
    if (r.is_zero()) break;
    s.push_back(-r);
  }
  return s;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int variations_at(const std::vector<UPoly>& seq, const Rational& x) {
  std::vector<int> signs;
  for (const auto& q : seq) signs.push_back(sgn(q.eval(x)));
  return sign_changes(signs);
}

}  // namespace

QuadraticNumber::QuadraticNumber(const Rational& a, const Rational& b, const Integer& radicand)
    : a_(a), b_(b), d_(radicand) {
  if (sgn(d_) < 0) throw std::invalid_argument("negative radicand");
  if (sgn(b_) == 0 || sgn(d_) == 0) {
    b_ = 0;
    d_ = 0;
    return;
  }
  // Pull square factors out of the radicand.
  for (Integer k = 2; k * k <= d_; ++k) {
    const Integer k2 = k * k;
    while (d_ % k2 == 0) {
      d_ /= k2;
      b_ *= k;
    }
  }
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 0;
  }
}

void QuadraticNumber::unify(const QuadraticNumber& o) {
  if (o.is_rational()) return;
  if (is_rational()) {
    d_ = o.d_;
    return;
  }
  if (d_ != o.d_) throw std::invalid_argument("quadratic numbers from different fields");
}

int QuadraticNumber::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational a2 = a_ * a_, b2d = b_ * b_ * d_;
  return a2 > b2d ? sa : sb;
}

double QuadraticNumber::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d());
}

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber r = *this;
  r.b_ = -r.b_;
  return r;
}

UPoly QuadraticNumber::minimal_polynomial() const {
  UPoly m = is_rational() ? UPoly({-a_, 1})
                          : UPoly({Rational(a_ * a_ - b_ * b_ * d_), Rational(-2 * a_), 1});
  Integer l = 1;
  for (const auto& c : m.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  m = m.scaled(l);
  Integer g = 0;
  for (const auto& c : m.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  return m.scaled(Rational(1) / Rational(g));
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  unify(o);
  a_ += o.a_;
  b_ += o.b_;
  if (sgn(b_) == 0) d_ = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) { return *this += -o; }

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  unify(o);
  const Rational a = a_ * o.a_ + b_ * o.b_ * d_;
  const Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  if (sgn(b_) == 0) d_ = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  const QuadraticNumber norm = o * o.conjugate();
  if (norm.sign() == 0) throw std::domain_error("division by zero");
  *this *= o.conjugate();
  a_ /= norm.a_;
  b_ /= norm.a_;
  return *this;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadraticNumber QuadraticNumber::pow(unsigned e) const {
  QuadraticNumber r = 1, base = *this;
  for (; e; e >>= 1, base *= base)
    if (e & 1) r *= base;
  return r;
}

std::string QuadraticNumber::to_string() const {
  if (is_rational()) return a_.get_str();
  std::string s;
  if (sgn(a_) != 0) s = a_.get_str() + (sgn(b_) > 0 ? " + " : " - ");
  else if (sgn(b_) < 0) s = "-";
  const Rational ab = abs(b_);
  if (ab != 1) s += ab.get_str() + "*";
  return s + "sqrt(" + d_.get_str() + ")";
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p,
                                                              const Rational& width) {
  if (p.degree() < 1) return {};
  const auto seq = sturm_sequence(p);
  Rational bound = 0;
  for (const auto& c : p.coeffs()) bound = std::max(bound, Rational(abs(c / p.lc())));
  bound += 1;

  std::vector<std::pair<Rational, Rational>> out;
  struct Piece {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Piece> todo{{-bound, bound, variations_at(seq, -bound), variations_at(seq, bound)}};
  while (!todo.empty()) {
    Piece q = todo.back();
    todo.pop_back();
    const int count = q.vlo - q.vhi;
    if (count == 0) continue;
    if (count == 1 && q.hi - q.lo <= width) {
      out.emplace_back(q.lo, q.hi);
      continue;
    }
    const Rational mid = (q.lo + q.hi) / 2;
    const int vmid = variations_at(seq, mid);
    todo.push_back({q.lo, mid, q.vlo, vmid});
    todo.push_back({mid, q.hi, vmid, q.vhi});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<QuadraticNumber>> quadratic_roots(const UPoly& p) {
  if (p.degree() == 1) return std::vector<QuadraticNumber>{QuadraticNumber(-p[0] / p[1])};
  if (p.degree() != 2) return std::nullopt;
  const Rational a = p[2], b = p[1], c = p[0];
  const Rational disc = b * b - 4 * a * c;
  if (sgn(disc) < 0) return std::vector<QuadraticNumber>{};
  // √(n/d) = √(n·d)/d
  const Integer n = disc.get_num(), d = disc.get_den();
  const Rational center = -b / (2 * a), half = Rational(1) / (2 * a * Rational(d));
  std::vector<QuadraticNumber> r{QuadraticNumber(center, -half, n * d),
                                 QuadraticNumber(center, half, n * d)};
  std::sort(r.begin(), r.end());
  if (r[0] == r[1]) r.pop_back();
  return r;
}

Rational root_upper_bound(const Integer& m, int n, const Rational& width) {
  if (sgn(m) <= 0 || n <= 0) throw std::invalid_argument("root_upper_bound needs m > 0, n > 0");
  Rational lo = 0, hi = std::max(Rational(m), Rational(1));
  while (hi - lo >= width) {
    const Rational mid = (lo + hi) / 2;
    if (rpow(mid, n) >= m) hi = mid;
    else lo = mid;
  }
  return hi;
}

}  // namespace affdyn
