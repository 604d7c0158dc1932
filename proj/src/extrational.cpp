#include <affdyn/extrational.hpp>

namespace affdyn {

const Rational& ExtRational::value() const {
  if (inf_ != 0) throw std::domain_error("value of an infinite quantity");
  return value_;
}

std::string ExtRational::to_string() const {
  if (inf_ > 0) return "inf";
  if (inf_ < 0) return "-inf";
  return value_.get_str();
}

}  // namespace affdyn
