#pragma once

#include <affdyn/poly.hpp>

#include <compare>
#include <string>

namespace affdyn {

/// A rational number or ±∞.
class ExtRational {
 public:
  ExtRational(const Rational& r = 0) : value_(r) {}  // NOLINT(google-explicit-constructor)
  ExtRational(long r) : value_(r) {}                 // NOLINT(google-explicit-constructor)
  static ExtRational infinity() { return ExtRational(1, true); }
  static ExtRational minus_infinity() { return ExtRational(-1, true); }

  bool is_finite() const { return inf_ == 0; }
  bool is_infinity() const { return inf_ > 0; }
  bool is_minus_infinity() const { return inf_ < 0; }
  /// Throws std::domain_error when infinite.
  const Rational& value() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.inf_ == b.inf_ && (a.inf_ != 0 || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ != b.inf_) return a.inf_ <=> b.inf_;
    if (a.inf_ != 0) return std::strong_ordering::equal;
    int c = cmp(a.value_, b.value_);
    return c <=> 0;
  }

  /// "inf", "-inf" or the rational in p/q form.
  std::string to_string() const;

 private:
  ExtRational(int sign, bool) : inf_(sign) {}
  Rational value_;
  int inf_ = 0;
};

}  // namespace affdyn
