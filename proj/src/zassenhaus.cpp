// Univariate factorization over Q: squarefree decomposition, factorization
// modulo a small prime (distinct-degree + Cantor-Zassenhaus), linear
// multifactor Hensel lifting and subset recombination.

#include <affdyn/upoly.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>

namespace affdyn {
namespace {

using u64 = std::uint64_t;
using ZPoly = std::vector<Integer>;  // integer coefficients, low first

class Fp {
 public:
  explicit Fp(u64 p) : p_(p) {}
  u64 p() const { return p_; }
  u64 add(u64 a, u64 b) const { return (a + b) % p_; }
  u64 sub(u64 a, u64 b) const { return (a + p_ - b) % p_; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p_; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p_ - 2); }
  u64 reduce(const Integer& z) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return r.get_ui();
  }

 private:
  u64 p_;
};

using PPoly = std::vector<u64>;  // coefficients mod p, low first, trimmed

void trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int deg(const PPoly& a) { return static_cast<int>(a.size()) - 1; }

PPoly psub(const Fp& F, PPoly a, const PPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] = F.sub(a[k], b[k]);
  trim(a);
  return a;
}

PPoly pmul(const Fp& F, const PPoly& a, const PPoly& b) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p();
  }
  trim(r);
  return r;
}

std::pair<PPoly, PPoly> pdivmod(const Fp& F, PPoly a, const PPoly& b) {
  if (deg(a) < deg(b)) return {{}, a};
  const int db = deg(b);
  PPoly q(deg(a) - db + 1, 0);
  u64 inv = F.inv(b.back());
  for (int k = deg(a); k >= db; --k) {
    u64 c = F.mul(a[k], inv);
    if (!c) continue;
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) a[k - db + j] = F.sub(a[k - db + j], F.mul(c, b[j]));
  }
  trim(a);
  trim(q);
  return {q, a};
}

PPoly pmod(const Fp& F, const PPoly& a, const PPoly& b) { return pdivmod(F, a, b).second; }

PPoly pmonic(const Fp& F, PPoly a) {
  if (a.empty()) return a;
  u64 inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

PPoly pgcd(const Fp& F, PPoly a, PPoly b) {
  while (!b.empty()) {
    PPoly r = pmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(F, a);
}

/// s with s * a ≡ 1 mod m (a, m coprime).
PPoly pinverse_mod(const Fp& F, const PPoly& a, const PPoly& m) {
  PPoly r0 = m, r1 = pmod(F, a, m), t0, t1{1};
  while (!r1.empty()) {
    auto [q, r] = pdivmod(F, r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    PPoly t2 = psub(F, t0, pmul(F, q, t1));
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant.
  u64 inv = F.inv(r0[0]);
  for (auto& c : t0) c = F.mul(c, inv);
  return pmod(F, t0, m);
}

PPoly ppowmod(const Fp& F, PPoly base, const Integer& e, const PPoly& m) {
  PPoly r{1};
  base = pmod(F, base, m);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t k = bits; k-- > 0;) {
    r = pmod(F, pmul(F, r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), k)) r = pmod(F, pmul(F, r, base), m);
  }
  return r;
}

PPoly pderiv(const Fp& F, const PPoly& a) {
  if (a.size() <= 1) return {};
  PPoly d(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = F.mul(a[k], k % F.p());
  trim(d);
  return d;
}

/// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<PPoly, int>> distinct_degree(const Fp& F, PPoly f) {
  std::vector<std::pair<PPoly, int>> out;
  PPoly x{0, 1};
  PPoly w = x;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    w = ppowmod(F, w, Integer(F.p()), f);
    PPoly g = pgcd(F, psub(F, w, x), f);
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      f = pdivmod(F, f, g).first;
      w = pmod(F, w, f);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, deg(f));
  return out;
}

/// Cantor-Zassenhaus equal-degree splitting (p odd).
void equal_degree(const Fp& F, const PPoly& f, int d, std::mt19937_64& rng,
                  std::vector<PPoly>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p(), d);
  e = (e - 1) / 2;
  for (;;) {
    PPoly a(deg(f));
    for (auto& c : a) c = rng() % F.p();
    trim(a);
    if (deg(a) < 1) continue;
    PPoly b = ppowmod(F, a, e, f);
    PPoly g = pgcd(F, psub(F, b, PPoly{1}), f);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, pdivmod(F, f, g).first, d, rng, out);
      return;
    }
  }
}

std::vector<PPoly> factor_mod_p(const Fp& F, const PPoly& monic_f) {
  std::mt19937_64 rng(0x5eed + F.p());
  std::vector<PPoly> out;
  for (auto& [g, d] : distinct_degree(F, monic_f)) equal_degree(F, g, d, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PPoly reduce(const Fp& F, const ZPoly& f) {
  PPoly r(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = F.reduce(f[k]);
  trim(r);
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZPoly lift_to_z(const PPoly& a) {
  ZPoly r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = Integer(static_cast<unsigned long>(a[k]));
  return r;
}

/// Primitive integer polynomial proportional to a (positive leading coefficient).
ZPoly integer_primitive(const UPoly& a) {
  Integer den = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  Integer g = 0;
  for (const auto& c : a.coeffs()) {
    Rational s = c * den;
    z.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

UPoly to_rational(const ZPoly& z) {
  std::vector<Rational> c;
  c.reserve(z.size());
  for (const auto& v : z) c.emplace_back(v);
  return UPoly(std::move(c));
}

/// Lift ℓ·∏g_i ≡ f (mod p) to modulus p^k_target. Factors stay monic.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<PPoly>& factors, const Fp& F,
                               int k_target) {
  const std::size_t r = factors.size();
  const Integer lc = f.back();
  const u64 lc_inv = F.inv(F.reduce(lc));
  std::vector<PPoly> s(r);
  for (std::size_t i = 0; i < r; ++i) {
    PPoly others{1};
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = pmul(F, others, factors[j]);
    s[i] = pinverse_mod(F, others, factors[i]);
  }
  std::vector<ZPoly> g;
  g.reserve(r);
  for (const auto& h : factors) g.push_back(lift_to_z(h));
  Integer pk = F.p();
  for (int k = 1; k < k_target; ++k) {
    ZPoly prod{lc};
    for (const auto& h : g) prod = zmul(prod, h);
    ZPoly e(f.size());
    for (std::size_t t = 0; t < f.size(); ++t) {
      Integer diff = f[t] - (t < prod.size() ? prod[t] : Integer(0));
      e[t] = diff / pk;  // exact by the lifting invariant
    }
    PPoly em = reduce(F, e);
    for (auto& c : em) c = F.mul(c, lc_inv);
    for (std::size_t i = 0; i < r; ++i) {
      PPoly delta = pmod(F, pmul(F, em, s[i]), factors[i]);
      for (std::size_t t = 0; t < delta.size(); ++t) g[i][t] += pk * static_cast<unsigned long>(delta[t]);
    }
    pk *= F.p();
  }
  return g;
}

Integer symmetric_mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

void next_combination(std::vector<std::size_t>& c, std::size_t n, bool& done) {
  std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return;
    }
  }
  done = true;
}

/// Monic irreducible factors of a monic squarefree polynomial over Q.
std::vector<UPoly> factor_squarefree(const UPoly& a) {
  if (a.degree() <= 1) return {a};
  ZPoly f = integer_primitive(a);
  const int n = static_cast<int>(f.size()) - 1;

  // Choose among a few good primes the one giving the fewest modular factors.
  std::vector<PPoly> best;
  u64 best_p = 0;
  int tried = 0;
  for (u64 p = 3; tried < 6; p += 2) {
    if (!is_prime(p)) continue;
    Fp F(p);
    if (F.reduce(f.back()) == 0) continue;
    PPoly fp = pmonic(F, reduce(F, f));
    if (deg(pgcd(F, fp, pderiv(F, fp))) > 0) continue;
    auto facs = factor_mod_p(F, fp);
    ++tried;
    if (best_p == 0 || facs.size() < best.size()) {
      best = std::move(facs);
      best_p = p;
    }
    if (best.size() == 1) break;
  }
  if (best.size() == 1) return {a};

  // Landau-Mignotte style bound on factor coefficients, times the leading coefficient.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Integer bound = abs(f.back()) * root;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n + 1));
  Fp F(best_p);
  int k = 1;
  Integer pk = best_p;
  while (pk <= bound) {
    pk *= best_p;
    ++k;
  }
  std::vector<ZPoly> lifted = hensel_lift(f, best, F, k);

  std::vector<UPoly> result;
  std::vector<std::size_t> remaining(lifted.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  ZPoly cur = f;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<std::size_t> comb(s);
    std::iota(comb.begin(), comb.end(), 0);
    bool done = false;
    while (!done) {
      ZPoly g{cur.back()};
      for (std::size_t idx : comb) g = zmul(g, lifted[remaining[idx]]);
      for (auto& c : g) c = symmetric_mod(c, pk);
      UPoly cand = to_rational(g);
      if (cand.degree() > 0) {
        auto [q, r] = divmod(to_rational(cur), cand);
        if (r.is_zero()) {
          result.push_back(cand.monic());
          cur = integer_primitive(q);
          std::vector<std::size_t> rest;
          for (std::size_t t = 0; t < remaining.size(); ++t)
            if (std::find(comb.begin(), comb.end(), t) == comb.end()) rest.push_back(remaining[t]);
          remaining = std::move(rest);
          found = true;
          break;
        }
      }
      next_combination(comb, remaining.size(), done);
    }
    if (!found) ++s;
  }
  if (cur.size() > 1) result.push_back(to_rational(cur).monic());
  return result;
}

bool upoly_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int k = a.degree(); k >= 0; --k)
    if (a[k] != b[k]) return a[k] < b[k];
  return false;
}

}  // namespace

UFactorization factor_univariate(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  UFactorization out;
  out.unit = p.lc();
  if (p.degree() == 0) return out;
  // Yun's squarefree decomposition.
  UPoly f = p.monic();
  UPoly a = gcd(f, f.derivative());
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(f.derivative(), a).first;
  UPoly d = c - b.derivative();
  int mult = 1;
  while (b.degree() > 0) {
    UPoly g = gcd(b, d);
    if (g.degree() > 0)
      for (auto& q : factor_squarefree(g)) out.factors.emplace_back(q, mult);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++mult;
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (upoly_less(x.first, y.first)) return true;
    if (upoly_less(y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

}  // namespace affdyn
