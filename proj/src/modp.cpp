#include <affdyn/modp.hpp>

#include <algorithm>
#include <stdexcept>

namespace affdyn::modp {

Field::Field(u64 p) : p_(p) {
  if (p < 2 || p >= (u64{1} << 62)) throw std::invalid_argument("modulus out of range");
}

u64 Field::pow(u64 a, u64 e) const {
  u64 r = 1;
  for (a %= p_; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}

u64 Field::inv(u64 a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero mod p");
  return pow(a, p_ - 2);
}

std::optional<u64> Field::reduce(const Rational& r) const {
  const Integer P(std::to_string(p_));
  Integer n = r.get_num() % P, d = r.get_den() % P;
  if (sgn(n) < 0) n += P;
  if (sgn(d) == 0) return std::nullopt;
  return mul(std::stoull(n.get_str()), inv(std::stoull(d.get_str())));
}

u64 Field::from_int(long v) const {
  const long long m = static_cast<long long>(v % static_cast<long long>(p_));
  return m < 0 ? static_cast<u64>(m + static_cast<long long>(p_)) : static_cast<u64>(m);
}

u64 next_prime(u64 n) {
  Integer z(std::to_string(n - 1)), r;
  mpz_nextprime(r.get_mpz_t(), z.get_mpz_t());
  return std::stoull(r.get_str());
}

u64 random_large_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(u64{1} << 60, (u64{1} << 61) - (u64{1} << 20));
  return next_prime(dist(rng));
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly add(const Field& k, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = k.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Poly sub(const Field& k, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = k.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Poly mul(const Field& k, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  // Accumulate in 128 bits and reduce once per output coefficient chunk.
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  const unsigned __int128 P = k.p();
  const unsigned __int128 limit = ~static_cast<unsigned __int128>(0) - P * P;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto& c = acc[i + j];
      c += static_cast<unsigned __int128>(a[i]) * b[j];
      if (c > limit) c %= P;
    }
  }
  Poly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i] % P);
  trim(r);
  return r;
}

Poly scale(const Field& k, const Poly& a, u64 c) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(a[i], c);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Field& k, const Poly& a, const Poly& b) {
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  const u64 li = k.inv(b.back());
  for (int i = degree(r); i >= degree(b); --i) {
    const u64 c = k.mul(r[i], li);
    if (c == 0) continue;
    const int s = i - degree(b);
    q[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[s + j] = k.sub(r[s + j], k.mul(c, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly gcd(const Field& k, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(k, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return scale(k, a, k.inv(a.back()));
}

Poly derivative(const Field& k, const Poly& a) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(k.mul(a[i], i % k.p()));
  trim(r);
  return r;
}

u64 eval(const Field& k, const Poly& a, u64 x) {
  u64 r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = k.add(k.mul(r, x), *it);
  return r;
}

bool is_squarefree(const Field& k, const Poly& a) {
  if (degree(a) <= 0) return true;
  return degree(gcd(k, a, derivative(k, a))) == 0;
}

u64 resultant(const Field& k, const Poly& a0, const Poly& b0) {
  Poly a = a0, b = b0;
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  u64 res = 1;
  // res(a, b) = (−1)^{deg a deg b} res(b, a); res(a, b) = lc(b)^{deg a − deg r} res(a, r)
  // with r = a mod b, applied as res(a, b) = (−1)^{..} lc(b)^{..} res(b, r).
  while (degree(b) > 0) {
    Poly r = divmod(k, a, b).second;
    if (r.empty()) return 0;
    const int da = degree(a), db = degree(b), dr = degree(r);
    if ((da % 2 == 1) && (db % 2 == 1)) res = k.neg(res);
    res = k.mul(res, k.pow(b.back(), static_cast<u64>(da - dr)));
    a = std::move(b);
    b = std::move(r);
  }
  return k.mul(res, k.pow(b[0], static_cast<u64>(degree(a))));
}

Poly interpolate(const Field& k, const std::vector<u64>& xs, const std::vector<u64>& ys) {
  // Newton divided differences.
  const std::size_t n = xs.size();
  std::vector<u64> c = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i)
      c[i] = k.mul(k.sub(c[i], c[i - 1]), k.inv(k.sub(xs[i], xs[i - j])));
  Poly r{c[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    r = mul(k, r, Poly{k.neg(xs[i]), 1});
    r = add(k, r, Poly{c[i]});
  }
  trim(r);
  return r;
}

std::optional<Poly> specialize_x(const Field& k, const Poly2& p, u64 x0) {
  Poly r(static_cast<std::size_t>(std::max(p.degree_y(), 0)) + 1, 0);
  for (const auto& [m, c] : p.terms()) {
    auto cr = k.reduce(c);
    if (!cr) return std::nullopt;
    r[m.j] = k.add(r[m.j], k.mul(*cr, k.pow(x0, m.i)));
  }
  trim(r);
  return r;
}

std::optional<Poly> compose_univariate(const Field& k, const Poly2& p, const Poly& X,
                                       const Poly& Y) {
  std::vector<Poly> xp{{1}}, yp{{1}};
  for (int e = 0; e < p.degree_x(); ++e) xp.push_back(mul(k, xp.back(), X));
  for (int e = 0; e < p.degree_y(); ++e) yp.push_back(mul(k, yp.back(), Y));
  // Group by the power of y to share products.
  std::vector<Poly> by_j(yp.size());
  for (const auto& [m, c] : p.terms()) {
    auto cr = k.reduce(c);
    if (!cr) return std::nullopt;
    by_j[m.j] = add(k, by_j[m.j], scale(k, xp[m.i], *cr));
  }
  Poly r;
  for (std::size_t j = 0; j < by_j.size(); ++j)
    if (!by_j[j].empty()) r = add(k, r, mul(k, by_j[j], yp[j]));
  return r;
}

}  // namespace affdyn::modp
