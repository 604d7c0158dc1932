#include <affdyn/padic.hpp>

#include <algorithm>
#include <future>
#include <thread>

namespace affdyn {
namespace {

using modp::u64;
using Elt = FiniteField::Elt;

int valuation(const Integer& n, long p) {
  if (sgn(n) == 0) return kInfiniteValuation;
  Integer rest;
  const Integer pp = p;
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer eval_mod(const Poly2& q, const Integer& a, const Integer& b, const PAdicContext& ctx) {
  Integer s = 0;
  for (const auto& [mo, c] : q.terms()) {
    Integer t = reduce_mod(c, ctx), e;
    mpz_powm_ui(e.get_mpz_t(), a.get_mpz_t(), mo.i, ctx.pm.get_mpz_t());
    t *= e;
    mpz_powm_ui(e.get_mpz_t(), b.get_mpz_t(), mo.j, ctx.pm.get_mpz_t());
    t *= e;
    s = mod(s + t, ctx.pm);
  }
  return s;
}

Mat2 mat_mul(const FiniteField& k, const Mat2& a, const Mat2& b) {
  return {k.add(k.mul(a[0], b[0]), k.mul(a[1], b[2])), k.add(k.mul(a[0], b[1]), k.mul(a[1], b[3])),
          k.add(k.mul(a[2], b[0]), k.mul(a[3], b[2])), k.add(k.mul(a[2], b[1]), k.mul(a[3], b[3]))};
}

Mat2 identity_matrix() { return {Elt{1, 0}, Elt{0, 0}, Elt{0, 0}, Elt{1, 0}}; }

Mat2 mat_pow(const FiniteField& k, Mat2 a, long e) {
  Mat2 r = identity_matrix();
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mat_mul(k, r, a);
    a = mat_mul(k, a, a);
  }
  return r;
}

void check_prime(long p) {
  if (p < 3 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) == 0)
    throw std::invalid_argument("expected an odd prime, got " + std::to_string(p));
}

}  // namespace

PAdicContext::PAdicContext(long p_, int m_) : p(p_), m(m_) {
  check_prime(p);
  if (m < 1) throw std::invalid_argument("precision must be positive");
  mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
}

int padic_valuation(const Rational& r, long p) {
  if (sgn(r) == 0) return kInfiniteValuation;
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

Rational padic_abs(const Rational& r, long p) {
  const int v = padic_valuation(r, p);
  if (v == kInfiniteValuation) return 0;
  Integer pv;
  mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::abs(v)));
  return v >= 0 ? Rational(1) / Rational(pv) : Rational(pv);
}

Integer reduce_mod(const Rational& r, const PAdicContext& ctx) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), r.get_den_mpz_t(), ctx.pm.get_mpz_t()) == 0)
    throw std::domain_error("denominator of " + r.get_str() + " is divisible by " + std::to_string(ctx.p));
  return mod(r.get_num() * inv, ctx.pm);
}

long good_prime(const Endo2& f, const std::vector<long>& candidates, bool check_degree) {
  if (candidates.empty()) throw std::invalid_argument("no candidate primes");
  for (long p : candidates) {
    if (p < 3 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) == 0) continue;
    bool ok = true;
    for (const Poly2* q : {&f.F(), &f.G()}) {
      for (const auto& [mo, c] : q->terms())
        if (valuation(c.get_den(), p) > 0) ok = false;
      if (ok && check_degree && !q->is_zero() &&
          reduce_poly_mod_p(q->homogeneous_part(q->degree()), p).is_zero())
        ok = false;
    }
    if (ok) return p;
  }
  throw BadPrime("no good prime among the candidates");
}

Poly2 PolyModP::lift() const {
  Poly2 out;
  for (const auto& t : terms) out.add_term(t.i, t.j, Rational(Integer(t.c)));
  return out;
}

PolyModP reduce_poly_mod_p(const Poly2& q, long p) {
  const modp::Field k(static_cast<u64>(p));
  PolyModP out;
  for (const auto& [mo, c] : q.terms()) {
    const auto r = k.reduce(c);
    if (!r) throw BadPrime(std::to_string(p) + " divides a coefficient denominator");
    if (*r != 0) out.terms.push_back({mo.i, mo.j, *r});
  }
  return out;
}

EndoModP reduce_mod_p(const Endo2& f, long p) {
  check_prime(p);
  EndoModP r{p,
             reduce_poly_mod_p(f.F(), p),
             reduce_poly_mod_p(f.G(), p),
             reduce_poly_mod_p(f.F().dx(), p),
             reduce_poly_mod_p(f.F().dy(), p),
             reduce_poly_mod_p(f.G().dx(), p),
             reduce_poly_mod_p(f.G().dy(), p),
             reduce_poly_mod_p(jacobian_det(f), p)};
  if (r.jacobian.is_zero())
    throw BadPrime("Jacobian determinant vanishes identically mod " + std::to_string(p));
  return r;
}

FiniteField::FiniteField(long p, int degree) : p_(p), degree_(degree), k_(static_cast<u64>(p)) {
  check_prime(p);
  if (degree != 1 && degree != 2) throw std::invalid_argument("field degree must be 1 or 2");
  if (degree == 2) {
    r_ = 2;
    while (k_.pow(r_, (static_cast<u64>(p) - 1) / 2) != static_cast<u64>(p) - 1) ++r_;
  }
}

Elt FiniteField::element(std::size_t index) const {
  return {static_cast<u64>(index % p_), static_cast<u64>(index / p_)};
}

Elt FiniteField::add(const Elt& a, const Elt& b) const { return {k_.add(a[0], b[0]), k_.add(a[1], b[1])}; }
Elt FiniteField::sub(const Elt& a, const Elt& b) const { return {k_.sub(a[0], b[0]), k_.sub(a[1], b[1])}; }

Elt FiniteField::mul(const Elt& a, const Elt& b) const {
  return {k_.add(k_.mul(a[0], b[0]), k_.mul(r_, k_.mul(a[1], b[1]))),
          k_.add(k_.mul(a[0], b[1]), k_.mul(a[1], b[0]))};
}

Elt FiniteField::eval(const PolyModP& q, const Elt& x, const Elt& y) const {
  int dx = 0, dy = 0;
  for (const auto& t : q.terms) dx = std::max(dx, t.i), dy = std::max(dy, t.j);
  std::vector<Elt> px{lift(1)}, py{lift(1)};
  for (int i = 0; i < dx; ++i) px.push_back(mul(px.back(), x));
  for (int j = 0; j < dy; ++j) py.push_back(mul(py.back(), y));
  Elt s{0, 0};
  for (const auto& t : q.terms) s = add(s, mul(lift(t.c), mul(px[t.i], py[t.j])));
  return s;
}

std::vector<PeriodicPoint> periodic_points_mod_p(const EndoModP& f, int max_period, int max_field_degree) {
  const FiniteField k(f.p, max_field_degree);
  const std::size_t q = k.size();
  const std::size_t n = q * q;
  std::vector<std::size_t> next(n);
  // Images over the point grid, in parallel chunks.
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t lo = 0; lo < n; lo += chunk) {
    jobs.push_back(std::async(std::launch::async, [&, lo] {
      for (std::size_t i = lo; i < std::min(n, lo + chunk); ++i) {
        const Elt x = k.element(i % q), y = k.element(i / q);
        next[i] = k.index(k.eval(f.F, x, y)) + q * k.index(k.eval(f.G, x, y));
      }
    }));
  }
  for (auto& j : jobs) j.get();

  // Cycles of the functional graph.
  std::vector<int> period(n, 0);
  std::vector<char> state(n, 0);
  std::vector<std::size_t> path;
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s]) continue;
    path.clear();
    std::size_t v = s;
    while (!state[v]) {
      state[v] = 1;
      path.push_back(v);
      v = next[v];
    }
    if (state[v] == 1) {
      const auto it = std::find(path.begin(), path.end(), v);
      const int len = static_cast<int>(path.end() - it);
      for (auto c = it; c != path.end(); ++c) period[*c] = len;
    }
    for (std::size_t u : path) state[u] = 2;
  }

  // A periodic point is critical when its cycle meets the critical set,
  // i.e. when d(f^period) is singular there.
  const auto critical_at = [&](std::size_t i) {
    return k.is_zero(k.eval(f.jacobian, k.element(i % q), k.element(i / q)));
  };
  std::vector<char> cycle_critical(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (period[i] == 0 || state[i] == 3) continue;
    bool crit = false;
    std::size_t v = i;
    do {
      crit = crit || critical_at(v);
      v = next[v];
    } while (v != i);
    do {
      cycle_critical[v] = crit;
      state[v] = 3;
      v = next[v];
    } while (v != i);
  }

  std::vector<PeriodicPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (period[i] == 0 || period[i] > max_period) continue;
    PeriodicPoint pt;
    pt.x = k.element(i % q);
    pt.y = k.element(i / q);
    pt.field_degree = (pt.x[1] != 0 || pt.y[1] != 0) ? 2 : 1;
    pt.period = period[i];
    pt.critical = cycle_critical[i];
    out.push_back(pt);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.field_degree < b.field_degree;
  });
  return out;
}

Mat2 iterate_differential(const EndoModP& f, const FiniteField& k, const PeriodicPoint& x, long n) {
  Mat2 M = identity_matrix();
  Elt a = x.x, b = x.y;
  for (long s = 0; s < n; ++s) {
    const Mat2 J{k.eval(f.Fx, a, b), k.eval(f.Fy, a, b), k.eval(f.Gx, a, b), k.eval(f.Gy, a, b)};
    M = mat_mul(k, J, M);
    const Elt a2 = k.eval(f.F, a, b);
    b = k.eval(f.G, a, b);
    a = a2;
  }
  return M;
}

long identity_tangent_iterate(const EndoModP& f, const PeriodicPoint& x) {
  if (x.critical) throw std::invalid_argument("identity_tangent_iterate needs a noncritical point");
  const FiniteField k(f.p, x.field_degree);
  const Mat2 M = iterate_differential(f, k, x, x.period);
  // Order of M: reduce |GL_2(F_q)| by each prime factor while M^(n/r) = id.
  const long q = static_cast<long>(k.size());
  long r = (q * q - 1) * (q * q - q);
  if (mat_pow(k, M, r) != identity_matrix()) throw std::logic_error("differential has no finite order");
  std::vector<long> primes;
  long rest = r;
  for (long d = 2; d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    primes.push_back(d);
    while (rest % d == 0) rest /= d;
  }
  if (rest > 1) primes.push_back(rest);
  for (long d : primes)
    while (r % d == 0 && mat_pow(k, M, r / d) == identity_matrix()) r /= d;
  // d(f^(r·period))(x) = M^r since x returns to itself after each period.
  if (mat_pow(k, M, r) != identity_matrix()) throw std::logic_error("tangent iterate failed verification");
  const long steps = r * x.period;
  return steps;
}

Rational projective_metric(const std::vector<Rational>& P, const std::vector<Rational>& Q, long p) {
  if (P.size() != Q.size() || P.empty()) throw std::invalid_argument("projective points of different dimension");
  Rational mp = 0, mq = 0, num = 0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    mp = std::max(mp, padic_abs(P[i], p));
    mq = std::max(mq, padic_abs(Q[i], p));
    for (std::size_t j = i + 1; j < P.size(); ++j)
      num = std::max(num, padic_abs(P[i] * Q[j] - P[j] * Q[i], p));
  }
  if (sgn(mp) == 0 || sgn(mq) == 0) throw std::invalid_argument("zero vector is not a projective point");
  return num / (mp * mq);
}

AttractionReport attraction_monitor(const Endo2& f, const Point& p0, const BoundaryTarget& target,
                                    const PAdicContext& ctx, int N, long height_cap) {
  good_prime(f, {ctx.p}, false);
  const OrbitRecord orbit = iterate_orbit(f, p0, N, height_cap);
  AttractionReport r;
  r.stationary = orbit.status == OrbitStatus::preperiodic;
  // The orbit record stops at the first repeat; the rest of the orbit cycles.
  for (int n = 0; n <= N; ++n) {
    std::size_t idx = static_cast<std::size_t>(n);
    if (idx >= orbit.points.size()) {
      if (!orbit.cycle) break;
      const auto [m, e] = *orbit.cycle;
      idx = static_cast<std::size_t>(m + (n - m) % (e - m));
    }
    const auto& [x, y] = orbit.points[idx];
    if (target.kind == BoundaryTarget::Kind::line_at_infinity) {
      // Distance from [1 : x : y] to {x0 = 0} is |x0|_p / max |x_i|_p.
      r.distances.push_back(Rational(1) / std::max({Rational(1), padic_abs(x, ctx.p), padic_abs(y, ctx.p)}));
    } else {
      r.distances.push_back(projective_metric({1, x, y}, target.point, ctx.p));
    }
  }
  r.steps = static_cast<int>(r.distances.size()) - 1;
  r.monotone_tail = true;
  for (std::size_t i = r.distances.size() / 2 + 1; i < r.distances.size(); ++i)
    if (r.distances[i] > r.distances[i - 1]) r.monotone_tail = false;
  return r;
}

std::array<std::vector<Integer>, 2> orbit_mod(const Endo2& f, const Point& p0, const PAdicContext& ctx, int N) {
  std::array<std::vector<Integer>, 2> seq;
  Integer a = reduce_mod(p0.first, ctx), b = reduce_mod(p0.second, ctx);
  for (int n = 0; n <= N; ++n) {
    seq[0].push_back(a);
    seq[1].push_back(b);
    Integer a2 = eval_mod(f.F(), a, b, ctx);
    b = eval_mod(f.G(), a, b, ctx);
    a = std::move(a2);
  }
  return seq;
}

int mahler_schedule(int k, long p) {
  if (k <= 0) return 0;
  return k / static_cast<int>(p - 1) + (k + 1) / 2 - 1;
}

MahlerReport mahler_test(const std::vector<Integer>& seq, int K, const PAdicContext& ctx) {
  if (K < 1 || static_cast<int>(seq.size()) <= K)
    throw std::invalid_argument("mahler_test needs a sequence longer than K");
  if (ctx.m <= mahler_schedule(K, ctx.p))
    throw std::invalid_argument("precision " + std::to_string(ctx.m) + " too small for K = " + std::to_string(K));
  MahlerReport r;
  r.N = static_cast<int>(seq.size());
  r.K = K;
  std::vector<Integer> diff(seq.begin(), seq.begin() + K + 1);
  for (int k = 0; k <= K; ++k) {
    const Integer d = mod(diff[0], ctx.pm);
    r.valuations.push_back(std::min(valuation(d, ctx.p), ctx.m));
    r.schedule.push_back(mahler_schedule(k, ctx.p));
    if (!r.fails_at && r.valuations.back() < r.schedule.back()) r.fails_at = k;
    for (int i = 0; i + 1 < static_cast<int>(diff.size()) - k; ++i) diff[i] = mod(diff[i + 1] - diff[i], ctx.pm);
  }
  double sk = 0, sv = 0, skk = 0, skv = 0;
  for (int k = 1; k <= K; ++k) {
    sk += k, sv += r.valuations[k], skk += k * k, skv += k * r.valuations[k];
  }
  const double den = K * skk - sk * sk;
  r.slope = den != 0 ? (K * skv - sk * sv) / den : 0;
  return r;
}

}  // namespace affdyn
