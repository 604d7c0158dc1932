#include <affdyn/valdyn.hpp>

#include <affdyn/modp.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace affdyn {
namespace {

std::optional<MonomialValuation> monomial_form(const Valuation& v) {
  if (auto* m = std::get_if<MonomialValuation>(&v)) return *m;
  if (auto* q = std::get_if<QuasimonomialValuation>(&v)) return as_monomial(*q);
  return std::nullopt;
}

/// Terms of p of maximal weight i·s + j·t, and that weight.
std::pair<Poly2, Rational> initial_form(const Poly2& p, const Rational& s, const Rational& t) {
  std::optional<Rational> best;
  for (const auto& [m, c] : p.terms()) {
    Rational w = s * m.i + t * m.j;
    if (!best || w > *best) best = w;
  }
  Poly2 in;
  for (const auto& [m, c] : p.terms())
    if (s * m.i + t * m.j == *best) in += Poly2::monomial(m.i, m.j, c);
  return {in, *best};
}

QuadraticNumber weight(const Monomial& m, const QuadraticMonomial& v) {
  return v.s * QuadraticNumber(m.i) + v.t * QuadraticNumber(m.j);
}

/// The unique term of p of largest weight at v, if unique.
std::optional<Monomial> unique_top(const Poly2& p, const QuadraticMonomial& v) {
  std::optional<Monomial> top;
  std::optional<QuadraticNumber> best;
  bool tie = false;
  for (const auto& [m, c] : p.terms()) {
    QuadraticNumber w = weight(m, v);
    if (!best || w > *best) {
      best = w;
      top = m;
      tie = false;
    } else if (w == *best) {
      tie = true;
    }
  }
  if (tie) return std::nullopt;
  return top;
}

QuadraticNumber eval_at(const UPoly& p, const QuadraticNumber& z) {
  QuadraticNumber r = 0;
  for (int k = p.degree(); k >= 0; --k) r = r * z + QuadraticNumber(p[k]);
  return r;
}

/// Solves the square system a·c = rhs over Q; nullopt when singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a,
                                           std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a[i][col]) == 0) continue;
      const Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      rhs[i] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= a[i][i];
  return rhs;
}

/// deg f^n for n = 1..N along a random line over a random large prime.
std::vector<long> modular_degrees(const Endo2& f, int N, int cap, std::mt19937_64& rng) {
  for (;;) {
    modp::Field k(modp::random_large_prime(rng));
    std::uniform_int_distribution<modp::u64> coin(1, k.p() - 1);
    modp::Poly X{coin(rng), coin(rng)}, Y{coin(rng), coin(rng)};
    std::vector<long> out;
    bool bad = false;
    for (int n = 1; n <= N; ++n) {
      auto nx = modp::compose_univariate(k, f.F(), X, Y);
      auto ny = modp::compose_univariate(k, f.G(), X, Y);
      if (!nx || !ny) {
        bad = true;
        break;
      }
      X = std::move(*nx);
      Y = std::move(*ny);
      const long d = std::max(modp::degree(X), modp::degree(Y));
      out.push_back(d);
      if (d > cap) break;
    }
    if (!bad) return out;
  }
}

Rational abs_diff(const Rational& a, const Rational& b) { return abs(Rational(a - b)); }

}  // namespace

Rational d_of(const Endo2& f, const Valuation& v) {
  Rational d = 0;
  for (const Poly2* p : {&f.F(), &f.G()}) {
    const ExtRational e = evaluate(v, *p);
    if (e.is_finite()) d = std::max(d, Rational(-e.value()));
  }
  return d;
}

std::optional<ExtensionalValuation> pushforward(const Endo2& f, const Valuation& v) {
  if (sgn(d_of(f, v)) == 0) return std::nullopt;
  return ExtensionalValuation{"f_*(" + to_string(v) + ")",
                              [f, v](const Poly2& p) { return evaluate(v, compose(p, f)); }};
}

Valuation normalize_action(const Endo2& f, const Valuation& v) {
  const Rational d = d_of(f, v);
  if (sgn(d) == 0) throw Collapsed();
  if (auto m = monomial_form(v)) {
    auto [inF, sF] = initial_form(f.F(), m->s, m->t);
    auto [inG, sG] = initial_form(f.G(), m->s, m->t);
    // Algebraically independent initial forms make f_*v monomial with
    // weights (−v(F), −v(G)).
    if (sgn(sF) >= 0 && sgn(sG) >= 0 && !jacobian_det(inF, inG).is_zero())
      return MonomialValuation(sF / d, sG / d);
  }
  return ExtensionalValuation{"f_.(" + to_string(v) + ")", [f, v, d](const Poly2& p) {
                                const ExtRational e = evaluate(v, compose(p, f));
                                if (!e.is_finite()) return e;
                                return ExtRational(e.value() / d);
                              }};
}

QuadraticNumber evaluate(const QuadraticMonomial& v, const Poly2& p) {
  if (p.is_zero()) throw std::domain_error("value of the zero polynomial");
  std::optional<QuadraticNumber> best;
  for (const auto& [m, c] : p.terms()) {
    QuadraticNumber w = weight(m, v);
    if (!best || w > *best) best = w;
  }
  return -*best;
}

QuadraticNumber d_of(const Endo2& f, const QuadraticMonomial& v) {
  QuadraticNumber d = 0;
  for (const Poly2* p : {&f.F(), &f.G()}) d = std::max(d, -evaluate(v, *p));
  return d;
}

EigenvaluationResult eigenvaluation_iterate(const Endo2& f, const Valuation& v0, int N,
                                            const Rational& tol) {
  EigenvaluationResult r;
  r.trajectory.push_back(v0);
  bool left_chart = false;
  for (int k = 0; k < N; ++k) {
    const Valuation& cur = r.trajectory.back();
    const Rational d = d_of(f, cur);
    if (sgn(d) == 0) {
      r.verdict = "inconclusive";
      return r;
    }
    Valuation next = normalize_action(f, cur);
    r.d_values.push_back(d);
    auto a = monomial_form(cur), b = monomial_form(next);
    r.trajectory.push_back(std::move(next));
    if (!a || !b) {
      left_chart = true;
      break;
    }
    r.residual = std::max(abs_diff(a->s, b->s), abs_diff(a->t, b->t));
    if (r.residual < tol) {
      r.converged = true;
      break;
    }
  }
  auto last = monomial_form(r.trajectory.back());
  if (left_chart || !last) {
    r.verdict = "inconclusive";
    return r;
  }
  r.verdict = "trajectory_only";

  // Exact fixed point of the monomial action w ↦ M·w read off at the last iterate.
  const QuadraticMonomial here{last->s, last->t};
  auto topF = unique_top(f.F(), here), topG = unique_top(f.G(), here);
  if (!topF || !topG) return r;
  const long a = topF->i, b = topF->j, c = topG->i, dd = topG->j;
  if (a * dd - b * c == 0) return r;
  auto mus = quadratic_roots(UPoly({Rational(a * dd - b * c), Rational(-(a + dd)), 1}));
  if (!mus || mus->empty()) return r;
  const QuadraticNumber mu = mus->back();
  if (mu.sign() <= 0) return r;
  QuadraticNumber ws, wt;
  if (b != 0) {
    ws = QuadraticNumber(b);
    wt = mu - QuadraticNumber(a);
  } else if (c != 0) {
    ws = mu - QuadraticNumber(dd);
    wt = QuadraticNumber(c);
  } else if (a != dd) {
    ws = a > dd ? 1 : 0;
    wt = a > dd ? 0 : 1;
  } else {
    ws = last->s;
    wt = last->t;
  }
  if (ws.sign() < 0 || wt.sign() < 0) {
    ws = -ws;
    wt = -wt;
  }
  if (ws.sign() < 0 || wt.sign() < 0) return r;
  const QuadraticNumber top = std::max(ws, wt);
  const QuadraticMonomial star{ws / top, wt / top};
  // The same monomials must dominate at v*, and v* must be an eigenvector.
  if (unique_top(f.F(), star) != topF || unique_top(f.G(), star) != topG) return r;
  const QuadraticNumber imS = weight(*topF, star), imT = weight(*topG, star);
  if (imS != mu * star.s || imT != mu * star.t) return r;
  r.fixed = star;
  r.d_fixed = d_of(f, star);
  r.alpha = std::min(star.s, star.t);
  r.thinness = QuadraticNumber(-1) - *r.alpha;
  r.verdict = "fixed";
  return r;
}

std::optional<std::vector<long>> find_recurrence(const std::vector<long>& d, int max_order) {
  const int N = static_cast<int>(d.size());
  for (int k = 1; k <= max_order && 2 * k + 1 <= N; ++k) {
    // Rows n = N−k+1..N (1-based): d_n = Σ_i c_i d_{n−i}.
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    for (int n = N - k + 1; n <= N; ++n) {
      std::vector<Rational> row;
      for (int i = 1; i <= k; ++i) row.emplace_back(d[n - i - 1]);
      a.push_back(row);
      rhs.emplace_back(d[n - 1]);
    }
    auto c = solve(a, rhs);
    if (!c) continue;
    std::vector<long> ci;
    bool integral = true;
    for (const auto& x : *c) {
      if (x.get_den() != 1 || !x.get_num().fits_slong_p()) integral = false;
      else ci.push_back(x.get_num().get_si());
    }
    if (!integral) continue;
    bool ok = true;
    for (int n = k + 1; n <= N && ok; ++n) {
      Integer s = 0;
      for (int i = 1; i <= k; ++i) s += Integer(ci[i - 1]) * Integer(d[n - i - 1]);
      ok = s == d[n - 1];
    }
    if (ok) return ci;
  }
  return std::nullopt;
}

bool DegreeGrowth::submultiplicative() const {
  const int N = static_cast<int>(degrees.size());
  for (int m = 1; m <= N; ++m)
    for (int n = 1; m + n <= N; ++n)
      if (Integer(degrees[m + n - 1]) > Integer(degrees[m - 1]) * Integer(degrees[n - 1]))
        return false;
  return true;
}

DegreeGrowth degree_growth(const Endo2& f, int N, const DegreeGrowthOptions& opts) {
  if (N <= 0) throw std::invalid_argument("degree_growth needs N >= 1");
  DegreeGrowth g;
  Endo2 cur = f;
  g.degrees.push_back(f.degree());
  g.exact.push_back(true);
  while (static_cast<int>(g.degrees.size()) < N &&
         static_cast<long>(g.degrees.back()) * f.degree() <= std::min(opts.exact_degree_cap, opts.degree_cap)) {
    cur = cur.then(f);
    g.degrees.push_back(cur.degree());
    g.exact.push_back(true);
  }
  if (static_cast<int>(g.degrees.size()) < N) {
    std::mt19937_64 rng(opts.seed);
    auto a = modular_degrees(f, N, opts.degree_cap, rng);
    auto b = modular_degrees(f, N, opts.degree_cap, rng);
    if (a != b) {
      auto c = modular_degrees(f, N, opts.degree_cap, rng);
      for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = std::max({a[i], i < b.size() ? b[i] : 0L, i < c.size() ? c[i] : 0L});
    }
    for (std::size_t i = g.degrees.size(); i < a.size(); ++i) {
      if (a[i] > opts.degree_cap) {
        g.partial = true;
        break;
      }
      g.degrees.push_back(a[i]);
      g.exact.push_back(false);
    }
    if (static_cast<int>(g.degrees.size()) < N) g.partial = true;
  }

  const Rational width(1, Integer(1) << 64);
  g.lambda1_lo = 1;
  g.lambda1_hi = std::numeric_limits<long>::max();
  for (std::size_t n = 0; n < g.degrees.size(); ++n)
    g.lambda1_hi = std::min(g.lambda1_hi, root_upper_bound(g.degrees[n], static_cast<int>(n + 1),
                                                           Rational(1, 1000000000)));

  g.recurrence = find_recurrence(g.degrees);
  if (!g.recurrence) return g;
  const auto& c = *g.recurrence;
  const int k = static_cast<int>(c.size());
  std::vector<Rational> chi(k + 1);
  chi[k] = 1;
  for (int i = 1; i <= k; ++i) chi[k - i] = -c[i - 1];
  g.characteristic = UPoly(chi);

  const auto fac = factor_univariate(*g.characteristic);
  std::optional<Rational> best_hi;
  for (const auto& [h, mult] : fac.factors) {
    auto roots = isolate_real_roots(h, width);
    if (roots.empty()) continue;
    if (!best_hi || roots.back().second > *best_hi) {
      best_hi = roots.back().second;
      g.lambda1_lo = roots.back().first;
      g.lambda1_hi = roots.back().second;
      g.minimal_polynomial = h;
      g.lambda1_multiplicity = mult;
    }
  }
  if (!g.minimal_polynomial) return g;
  if (auto roots = quadratic_roots(*g.minimal_polynomial); roots && !roots->empty()) {
    g.lambda1 = roots->back();
    g.minimal_polynomial = g.lambda1->minimal_polynomial();
    for (const auto& [h, mult] : fac.factors)
      if (mult >= 2 && (eval_at(h, *g.lambda1).sign() == 0 || eval_at(h, -*g.lambda1).sign() == 0))
        g.dominant_repeated = true;
  } else {
    g.dominant_repeated = g.lambda1_multiplicity >= 2;
  }
  return g;
}

Lambda2Report lambda2(const Endo2& f, int trials, std::uint64_t seed) {
  Lambda2Report rep;
  const Poly2 x = Poly2::x(), y = Poly2::y();
  const Poly2 topF = f.F().homogeneous_part(f.F().degree());
  const Poly2 topG = f.G().homogeneous_part(f.G().degree());
  // x → x + c·y makes both y-leading coefficients constant.
  for (long c = 0;; c = c > 0 ? -c : 1 - c) {
    if (sgn(topF.eval(c, 1)) != 0 && sgn(topG.eval(c, 1)) != 0) {
      rep.shear = c;
      break;
    }
  }
  const Poly2 F = compose(f.F(), x + y.scaled(rep.shear), y);
  const Poly2 G = compose(f.G(), x + y.scaled(rep.shear), y);

  std::mt19937_64 rng(seed);
  std::map<int, int> votes;
  const int max_attempts = 10 * trials;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const long box = 8L << (attempt / 4);
    std::uniform_int_distribution<long> dist(-box, box);
    const Rational a = dist(rng), b = dist(rng);
    const UPoly R = to_upoly(resultant(F - Poly2(a), G - Poly2(b), Var::y), Var::x);
    if (R.degree() < 1 || !is_squarefree(R)) {
      ++rep.non_generic;
      continue;
    }
    rep.generic_trials.push_back(R.degree());
    if (++votes[R.degree()] == trials) {
      rep.value = R.degree();
      break;
    }
  }
  if (rep.value == 0)
    throw std::runtime_error("lambda2: no " + std::to_string(trials) +
                             " agreeing generic trials; retry with another seed");

  // Cross-check: the same resultant over a large prime field, by evaluation
  // and interpolation in x.
  const int dF = F.degree_y(), dG = G.degree_y();
  const int K = f.F().degree() * f.G().degree() + 1;
  for (int attempt = 0; attempt < 8 && rep.modp_degree < 0; ++attempt) {
    modp::Field k(modp::random_large_prime(rng));
    std::uniform_int_distribution<modp::u64> coin(0, k.p() - 1);
    const modp::u64 a = coin(rng), b = coin(rng);
    std::vector<modp::u64> xs, ys;
    bool ok = true;
    for (int i = 0; i < K && ok; ++i) {
      const modp::u64 x0 = static_cast<modp::u64>(i) + 1;
      auto A = modp::specialize_x(k, F, x0), B = modp::specialize_x(k, G, x0);
      if (!A || !B || modp::degree(*A) != dF || modp::degree(*B) != dG) {
        ok = false;
        break;
      }
      (*A)[0] = k.sub((*A)[0], a);
      (*B)[0] = k.sub((*B)[0], b);
      xs.push_back(x0);
      ys.push_back(modp::resultant(k, *A, *B));
    }
    if (!ok) continue;
    const modp::Poly R = modp::interpolate(k, xs, ys);
    if (modp::degree(R) < 1 || !modp::is_squarefree(k, R)) continue;
    rep.prime = k.p();
    rep.modp_degree = modp::degree(R);
  }
  rep.modp_agrees = rep.modp_degree == rep.value;
  return rep;
}

InequalityReport check_degree_inequality(const DegreeGrowth& g, int l2) {
  InequalityReport r;
  r.lambda2 = l2;
  r.lambda1_sq_lo = g.lambda1_lo * g.lambda1_lo;
  r.lambda1_sq_hi = g.lambda1_hi * g.lambda1_hi;
  if (g.lambda1) {
    r.lambda1_sq = g.lambda1->pow(2);
    r.decided = true;
    r.holds = *r.lambda1_sq >= QuadraticNumber(l2);
    r.resonant = *r.lambda1_sq == QuadraticNumber(l2);
  } else if (r.lambda1_sq_lo > l2) {
    r.decided = r.holds = true;
  } else if (r.lambda1_sq_hi < l2) {
    r.decided = true;
  }
  return r;
}

InequalityReport check_degree_inequality(const Endo2& f, int N) {
  return check_degree_inequality(degree_growth(f, N), lambda2(f).value);
}

std::string to_string(Resonance r) {
  switch (r) {
    case Resonance::general: return "general";
    case Resonance::resonant_bounded: return "resonant_bounded";
    case Resonance::resonant_linear_growth: return "resonant_linear_growth";
    case Resonance::inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<NormalFormShape> triangular_shape(const Endo2& f) {
  if (f.F().degree_y() != 0) return std::nullopt;
  const int l = f.F().degree_x();
  if (l < 1 || f.G().degree_y() != l) return std::nullopt;
  std::vector<Rational> a0(f.G().degree_x() + 1);
  for (const auto& [m, c] : f.G().terms())
    if (m.j == l) a0[m.i] = c;
  return NormalFormShape{l, UPoly(a0)};
}

ResonanceReport resonance_classify(const Endo2& f, int N) {
  ResonanceReport r;
  r.growth = degree_growth(f, N);
  r.lambda2 = lambda2(f).value;
  r.shape = triangular_shape(f);
  const auto ineq = check_degree_inequality(r.growth, r.lambda2);
  if (r.growth.lambda1) {
    const double l1 = r.growth.lambda1->to_double();
    for (std::size_t n = 0; n < r.growth.degrees.size(); ++n)
      r.ratios.push_back(static_cast<double>(r.growth.degrees[n]) / std::pow(l1, n + 1));
  }
  if (ineq.decided && ineq.holds && !ineq.resonant) {
    r.tag = Resonance::general;
  } else if (ineq.resonant) {
    r.tag = r.growth.dominant_repeated ? Resonance::resonant_linear_growth
                                       : Resonance::resonant_bounded;
  } else {
    r.tag = Resonance::inconclusive;
    r.needed_N = std::max(N + 4, 9);
  }
  return r;
}

ThetaStar theta_star_approx(const Endo2& f, const Valuation& v, int n,
                            const QuadraticNumber& lambda1) {
  ThetaStar out;
  Endo2 cur = f;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) cur = cur.then(f);
    const Rational d = d_of(cur, v);
    if (sgn(d) == 0) {
      out.collapse_stage = k;
      break;
    }
    out.ratios.push_back(QuadraticNumber(d) / lambda1.pow(k));
  }
  return out;
}

ThetaStar theta_star_approx(const Endo2& f, const QuadraticMonomial& v, int n,
                            const QuadraticNumber& lambda1) {
  ThetaStar out;
  Endo2 cur = f;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) cur = cur.then(f);
    const QuadraticNumber d = d_of(cur, v);
    if (d.sign() == 0) {
      out.collapse_stage = k;
      break;
    }
    out.ratios.push_back(d / lambda1.pow(k));
  }
  return out;
}

}  // namespace affdyn
