#pragma once

#include <affdyn/poly.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace affdyn::modp {

using u64 = std::uint64_t;

/// Arithmetic in Z/p for a prime p < 2^62.
class Field {
 public:
  explicit Field(u64 p);
  u64 p() const { return p_; }

  u64 add(u64 a, u64 b) const { return a + b >= p_ ? a + b - p_ : a + b; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p_);
  }
  u64 pow(u64 a, u64 e) const;
  /// Throws std::domain_error for 0.
  u64 inv(u64 a) const;
  /// Reduction of a p-integral rational; nullopt when p divides the denominator.
  std::optional<u64> reduce(const Rational& r) const;
  u64 from_int(long v) const;

 private:
  u64 p_;
};

/// Smallest prime >= n (n < 2^62).
u64 next_prime(u64 n);
/// A random prime in [2^60, 2^61).
u64 random_large_prime(std::mt19937_64& rng);

/// Dense polynomial over Z/p, low degree first, no trailing zeros.
using Poly = std::vector<u64>;

int degree(const Poly& a);  ///< −1 for zero
void trim(Poly& a);
Poly add(const Field& k, const Poly& a, const Poly& b);
Poly sub(const Field& k, const Poly& a, const Poly& b);
Poly mul(const Field& k, const Poly& a, const Poly& b);
Poly scale(const Field& k, const Poly& a, u64 c);
std::pair<Poly, Poly> divmod(const Field& k, const Poly& a, const Poly& b);
Poly gcd(const Field& k, Poly a, Poly b);  ///< monic
Poly derivative(const Field& k, const Poly& a);
u64 eval(const Field& k, const Poly& a, u64 x);
bool is_squarefree(const Field& k, const Poly& a);
/// Resultant of nonzero a, b with respect to their formal degrees.
u64 resultant(const Field& k, const Poly& a, const Poly& b);
/// The polynomial of degree < n through (xs[i], ys[i]), xs distinct.
Poly interpolate(const Field& k, const std::vector<u64>& xs, const std::vector<u64>& ys);

/// p(x0, y) as a polynomial in y; nullopt if a coefficient is not p-integral.
std::optional<Poly> specialize_x(const Field& k, const Poly2& p, u64 x0);
/// P(X(t), Y(t)); nullopt if a coefficient is not p-integral.
std::optional<Poly> compose_univariate(const Field& k, const Poly2& p, const Poly& X,
                                       const Poly& Y);

}  // namespace affdyn::modp
