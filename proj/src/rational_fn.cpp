#include <affdyn/rational_fn.hpp>

#include <algorithm>

namespace affdyn {

RationalFn2::RationalFn2(Poly2 num, Poly2 den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Poly2 g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = divide_exact(num_, g);
    den_ = divide_exact(den_, g);
  }
  Rational lc = den_.leading_coefficient();
  num_ = num_.scaled(1 / lc);
  den_ = den_.scaled(1 / lc);
}

int RationalFn2::degree() const { return std::max(num_.degree(), den_.degree()); }

RationalFn2 RationalFn2::compose(const Endo2& f) const {
  return {affdyn::compose(num_, f), affdyn::compose(den_, f)};
}

Rational RationalFn2::eval(const Rational& a, const Rational& b) const {
  Rational d = den_.eval(a, b);
  if (sgn(d) == 0) throw std::domain_error("evaluation at a pole");
  return num_.eval(a, b) / d;
}

RationalFn2 operator+(const RationalFn2& a, const RationalFn2& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RationalFn2 operator-(const RationalFn2& a, const RationalFn2& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RationalFn2 operator*(const RationalFn2& a, const RationalFn2& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
RationalFn2 operator/(const RationalFn2& a, const RationalFn2& b) {
  if (b.num_.is_zero()) throw std::domain_error("division by zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFn2::to_string() const {
  if (den_ == Poly2(1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace affdyn
