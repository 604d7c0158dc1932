#include <affdyn/valuation.hpp>

#include <algorithm>
#include <sstream>

namespace affdyn {
namespace {

void add_to(Puiseux& s, const Rational& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = s.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) s.erase(it);
  }
}

Puiseux mul(const Puiseux& a, const Puiseux& b) {
  Puiseux r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_to(r, ea + eb, ca * cb);
  return r;
}

/// Q(φ(w), w) for Q in local coordinates (z, w).
Puiseux substitute(const Poly2& q, const Puiseux& phi) {
  std::vector<Puiseux> pw{Puiseux{{Rational(0), Rational(1)}}};
  const int dz = q.is_zero() ? 0 : q.degree_x();
  for (int k = 0; k < dz; ++k) pw.push_back(mul(pw.back(), phi));
  Puiseux r;
  for (const auto& [m, a] : q.terms())
    for (const auto& [e, c] : pw[m.i]) add_to(r, e + m.j, a * c);
  return r;
}

/// Leading exponents of ∂_z^k Q(φ, w) for k = 0..deg_z Q (nullopt when zero).
std::vector<std::optional<Rational>> derivative_leads(const Poly2& q, const Puiseux& phi) {
  std::vector<std::optional<Rational>> out;
  Poly2 d = q;
  while (!d.is_zero()) {
    Puiseux s = substitute(d, phi);
    out.push_back(s.empty() ? std::nullopt : std::optional<Rational>(s.begin()->first));
    d = d.dx();
  }
  return out;
}

Rational skewness_formula(const Puiseux& phi, const Rational& t) {
  Rational integral = 0, upper = 1;
  Integer m = 1;
  for (const auto& [beta, a] : phi) {
    integral += (upper - beta) / Rational(m);
    mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), beta.get_den_mpz_t());
    upper = beta;
  }
  integral += (upper - t) / Rational(m);
  return 1 - integral;
}

Puiseux truncate_above(const Puiseux& phi, const Rational& floor) {
  Puiseux r;
  for (const auto& [e, c] : phi)
    if (e > floor) r.emplace(e, c);
  return r;
}

/// Uniform view of a valuation that lives on the tree as (center, φ, floor).
struct TreeForm {
  bool root = false;
  Center center;
  Puiseux phi;
  bool is_branch = false;
  std::optional<Rational> floor;  // t for points; truncation for branches (none: exact)
};

TreeForm tree_form(const Valuation& v) {
  TreeForm f;
  auto from_qm = [&](const QuasimonomialValuation& q) {
    f.root = q.is_root();
    f.center = q.center;
    f.phi = q.phi;
    f.floor = q.t;
  };
  if (auto* m = std::get_if<MonomialValuation>(&v)) {
    from_qm(to_quasimonomial(*m));
  } else if (auto* q = std::get_if<QuasimonomialValuation>(&v)) {
    from_qm(*q);
  } else if (auto* d = std::get_if<DivisorialValuation>(&v)) {
    auto w = d->X->monomial_weights(d->divisor);
    if (!w) throw NotRepresentable("divisorial valuation is not monomial; compare/meet unsupported");
    from_qm(to_quasimonomial(MonomialValuation(w->first, w->second)));
  } else if (auto* s = std::get_if<BranchSeries>(&v)) {
    f.center = s->center;
    f.phi = s->phi;
    f.is_branch = true;
    f.floor = s->truncation;
  } else {
    throw NotRepresentable("extensional valuation has no tree representation");
  }
  return f;
}

/// First exponent above `floor` at which φ1 and the best Galois conjugate of
/// φ2 disagree (nullopt: they agree above floor).
std::optional<Rational> disagreement(const Puiseux& a, const Puiseux& b,
                                     const std::optional<Rational>& floor) {
  std::vector<Rational> exps;
  Integer m = 1;
  for (const auto* s : {&a, &b})
    for (const auto& [e, c] : *s)
      if (!floor || e > *floor) {
        exps.push_back(e);
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), e.get_den_mpz_t());
      }
  std::sort(exps.begin(), exps.end(), std::greater<>());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  auto coeff = [](const Puiseux& s, const Rational& e) {
    auto it = s.find(e);
    return it == s.end() ? Rational(0) : it->second;
  };
  std::optional<Rational> best;
  bool best_agrees = false;
  for (unsigned long k = 0; k < m.get_ui() && !best_agrees; ++k) {
    std::optional<Rational> delta;
    for (const auto& e : exps) {
      Rational ca = coeff(a, e), cb = coeff(b, e);
      // w^{1/M} ↦ ζ^k w^{1/M} multiplies the w^e coefficient by exp(2πi·k·e).
      Rational r = e * static_cast<long>(k);
      bool same;
      if (r.get_den() == 1)
        same = ca == cb;
      else if (r.get_den() == 2)
        same = ca == -cb;
      else
        same = sgn(ca) == 0 && sgn(cb) == 0;
      if (!same) {
        delta = e;
        break;
      }
    }
    if (!delta)
      best_agrees = true;
    else if (!best || *delta < *best)
      best = delta;
  }
  if (best_agrees) return std::nullopt;
  return best;
}

QuasimonomialValuation root_valuation() { return QuasimonomialValuation{}; }

/// Shared logic of compare and meet. On a comparable pair reports the order;
/// otherwise the meet exponent.
struct Relation {
  Order order;
  std::optional<Rational> delta;
};

Relation relate(const TreeForm& a, const TreeForm& b) {
  if (a.root && b.root) return {Order::equal, {}};
  if (a.root) return {Order::less, {}};
  if (b.root) return {Order::greater, {}};
  if (!(a.center == b.center)) return {Order::incomparable, Rational(1)};
  std::optional<Rational> floor;
  if (a.floor && b.floor)
    floor = std::max(*a.floor, *b.floor);
  else if (a.floor)
    floor = a.floor;
  else if (b.floor)
    floor = b.floor;
  auto delta = disagreement(a.phi, b.phi, floor);
  if (delta) return {Order::incomparable, delta};
  if (!a.is_branch && !b.is_branch) {
    if (*a.floor == *b.floor) return {Order::equal, {}};
    return {*a.floor > *b.floor ? Order::less : Order::greater, {}};
  }
  if (!a.is_branch) {
    if (!b.floor || *a.floor >= *b.floor) return {Order::less, {}};
    throw Undecidable();
  }
  if (!b.is_branch) {
    if (!a.floor || *b.floor >= *a.floor) return {Order::greater, {}};
    throw Undecidable();
  }
  if (!a.floor && !b.floor) return {Order::equal, {}};
  throw Undecidable();
}

std::string puiseux_string(const Puiseux& phi) {
  if (phi.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : phi) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    os << Rational(abs(c)).get_str();
    if (sgn(e) != 0) os << "*w^(" << e.get_str() << ")";
  }
  return os.str();
}

}  // namespace

Poly2 Center::local(const Poly2& p) const {
  if (horizontal) return p.swapped();
  if (sgn(c) == 0) return p;
  return compose(p, Poly2::x() + Poly2::y().scaled(c), Poly2::y());
}

std::string Center::to_string() const {
  if (horizontal) return "[1:0:0]";
  return "[" + c.get_str() + ":1:0]";
}

MonomialValuation::MonomialValuation(Rational s_, Rational t_) : s(std::move(s_)), t(std::move(t_)) {
  if (sgn(s) < 0 || sgn(t) < 0 || std::max(s, t) != 1)
    throw std::invalid_argument("monomial valuation needs s, t >= 0 and max(s, t) = 1");
}

QuasimonomialValuation to_quasimonomial(const MonomialValuation& v) {
  if (v.s == 1 && v.t == 1) return root_valuation();
  if (v.t == 1) return {Center::vertical(0), {}, v.s};
  return {Center::x_axis(), {}, v.t};
}

std::optional<MonomialValuation> as_monomial(const QuasimonomialValuation& v) {
  if (v.is_root()) return MonomialValuation();
  if (!v.phi.empty() || sgn(v.t) < 0) return std::nullopt;
  if (v.center == Center::vertical(0)) return MonomialValuation(v.t, 1);
  if (v.center == Center::x_axis()) return MonomialValuation(1, v.t);
  return std::nullopt;
}

ExtRational evaluate(const Valuation& v, const Poly2& p) {
  if (p.is_zero()) return ExtRational::infinity();
  if (auto* m = std::get_if<MonomialValuation>(&v)) {
    std::optional<Rational> best;
    for (const auto& [mono, c] : p.terms()) {
      Rational val = -(m->s * mono.i + m->t * mono.j);
      if (!best || val < *best) best = val;
    }
    return *best;
  }
  if (auto* q = std::get_if<QuasimonomialValuation>(&v)) {
    if (q->is_root()) return Rational(-p.degree());
    auto leads = derivative_leads(q->center.local(p), q->phi);
    std::optional<Rational> top;
    for (std::size_t k = 0; k < leads.size(); ++k) {
      if (!leads[k]) continue;
      Rational e = *leads[k] + q->t * static_cast<long>(k);
      if (!top || e > *top) top = e;
    }
    return Rational(-*top);
  }
  if (auto* d = std::get_if<DivisorialValuation>(&v)) {
    ExtRational o = d->X->ord(d->divisor, p);
    return Rational(o.value() / d->X->divisor(d->divisor).b);
  }
  if (auto* s = std::get_if<BranchSeries>(&v)) {
    if (s->graph) {
      const auto& [g, var] = *s->graph;
      Poly2 curve = var == Var::y ? Poly2::y() - to_poly2(g, Var::x) : Poly2::x() - to_poly2(g, Var::y);
      if (divides(curve, p)) return ExtRational::infinity();
    }
    auto leads = derivative_leads(s->center.local(p), s->phi);
    std::optional<Rational> bound;
    if (s->truncation)
      for (std::size_t k = 1; k < leads.size(); ++k) {
        if (!leads[k]) continue;
        Rational e = *leads[k] + *s->truncation * static_cast<long>(k);
        if (!bound || e > *bound) bound = e;
      }
    if (!leads[0]) {
      if (!bound) return ExtRational::infinity();
      throw InsufficientTruncation();
    }
    if (bound && *leads[0] <= *bound) throw InsufficientTruncation();
    return Rational(-*leads[0]);
  }
  return std::get<ExtensionalValuation>(v).eval(p);
}

std::string to_string(Order o) {
  switch (o) {
    case Order::less: return "less";
    case Order::greater: return "greater";
    case Order::equal: return "equal";
    case Order::incomparable: return "incomparable";
  }
  return "?";
}

Order compare(const Valuation& v, const Valuation& w) {
  return relate(tree_form(v), tree_form(w)).order;
}

QuasimonomialValuation meet(const Valuation& v, const Valuation& w) {
  TreeForm a = tree_form(v), b = tree_form(w);
  Relation r = relate(a, b);
  auto point_of = [](const TreeForm& f) {
    if (f.root) return root_valuation();
    if (f.is_branch) throw std::invalid_argument("meet of a branch with itself is a curve valuation");
    return QuasimonomialValuation{f.center, f.phi, *f.floor};
  };
  switch (r.order) {
    case Order::less:
    case Order::equal: return point_of(a);
    case Order::greater: return point_of(b);
    case Order::incomparable: break;
  }
  if (*r.delta == 1) return root_valuation();
  return {a.center, truncate_above(a.phi, *r.delta), *r.delta};
}

ExtRational skewness(const Valuation& v) {
  if (auto* m = std::get_if<MonomialValuation>(&v)) {
    auto [X, e] = Compactification::monomial_chain(m->s, m->t);
    return X.skewness(e);
  }
  if (auto* q = std::get_if<QuasimonomialValuation>(&v))
    return q->is_root() ? Rational(1) : skewness_formula(q->phi, q->t);
  if (auto* d = std::get_if<DivisorialValuation>(&v)) return d->X->skewness(d->divisor);
  if (std::holds_alternative<BranchSeries>(v)) return ExtRational::minus_infinity();
  throw NotRepresentable("skewness of an extensional valuation");
}

ExtRational thinness(const Valuation& v) {
  if (auto* m = std::get_if<MonomialValuation>(&v)) {
    auto [X, e] = Compactification::monomial_chain(m->s, m->t);
    return X.thinness(e);
  }
  if (auto* q = std::get_if<QuasimonomialValuation>(&v)) return Rational(-1 - q->t);
  if (auto* d = std::get_if<DivisorialValuation>(&v)) return d->X->thinness(d->divisor);
  if (std::holds_alternative<BranchSeries>(v)) return ExtRational::infinity();
  throw NotRepresentable("thinness of an extensional valuation");
}

ExtRational green(const Valuation& v, const Valuation& w) {
  TreeForm a = tree_form(v), b = tree_form(w);
  if (a.is_branch && b.is_branch && relate(a, b).order == Order::equal)
    return ExtRational::minus_infinity();
  QuasimonomialValuation m = meet(v, w);
  if (m.is_root()) return Rational(1);
  return skewness_formula(m.phi, m.t);
}

Rational local_intersection(const BranchSeries& s1, const BranchSeries& s2) {
  if (!(s1.center == s2.center)) return 0;
  QuasimonomialValuation m = meet(s1, s2);
  Rational alpha = m.is_root() ? Rational(1) : skewness_formula(m.phi, m.t);
  return Rational(s1.line_intersection * s2.line_intersection) * (1 - alpha);
}

Rational local_intersection_refining(BranchSeries s1, BranchSeries s2, int max_terms) {
  int terms = 16;
  for (;;) {
    try {
      return local_intersection(s1, s2);
    } catch (const Undecidable&) {
      terms *= 2;
      if (terms > max_terms || (!s1.graph && !s2.graph)) throw;
      if (s1.graph && s1.truncation) s1 = refined(s1, terms);
      if (s2.graph && s2.truncation) s2 = refined(s2, terms);
    }
  }
}

BranchSeries graph_branch(const UPoly& p, Var dependent, int terms) {
  const int d = p.degree();
  if (d < 2 || p.lc() != 1) throw std::invalid_argument("graph branch needs a monic polynomial of degree >= 2");
  if (terms < 1) terms = 1;
  const int K = terms - 1;
  // x = y^{1/d} h(σ), σ = y^{-1/d}; h solves Σ a_i σ^i h^{d−i} = 1 with a_i
  // the coefficient of x^{d−i}. Coefficients c_k of h are fixed in turn by
  // c_k = −e_k/d, e_k the σ^k coefficient of the residual.
  auto residual = [&](const std::vector<Rational>& h, int upto) {
    std::vector<Rational> total(upto + 1);
    std::vector<Rational> hp{1};  // h^0
    std::vector<std::vector<Rational>> powers{hp};
    for (int e = 1; e <= d; ++e) {
      std::vector<Rational> next(upto + 1);
      const auto& prev = powers.back();
      for (int i = 0; i <= upto && i < static_cast<int>(prev.size()); ++i) {
        if (sgn(prev[i]) == 0) continue;
        for (int j = 0; i + j <= upto && j < static_cast<int>(h.size()); ++j) next[i + j] += prev[i] * h[j];
      }
      powers.push_back(std::move(next));
    }
    for (int i = 0; i <= d; ++i) {
      Rational a = p[d - i];
      if (sgn(a) == 0) continue;
      const auto& hpow = powers[d - i];
      for (int k = 0; k + i <= upto && k < static_cast<int>(hpow.size()); ++k) total[k + i] += a * hpow[k];
    }
    total[0] -= 1;
    return total;
  };
  std::vector<Rational> h{1};
  for (int k = 1; k <= K; ++k) {
    h.emplace_back(0);
    h[k] = -residual(h, k)[k] / d;
  }
  BranchSeries s;
  s.center = dependent == Var::y ? Center::vertical(0) : Center::x_axis();
  for (int k = 0; k <= K; ++k)
    if (sgn(h[k]) != 0) s.phi.emplace(frac(1 - k, d), h[k]);
  // Exact when the residual vanishes identically.
  auto full = residual(h, d * K + d);
  bool exact = std::all_of(full.begin(), full.end(), [](const Rational& c) { return sgn(c) == 0; });
  if (!exact) s.truncation = frac(-K, d);
  s.line_intersection = d;
  s.graph = std::make_pair(p, dependent);
  return s;
}

BranchSeries line_branch(const Rational& a, const Rational& b, const Rational& c) {
  if (sgn(a) == 0 && sgn(b) == 0) throw std::invalid_argument("not a line");
  BranchSeries s;
  Rational z0;
  if (sgn(b) == 0) {
    s.center = Center::vertical(0);
    z0 = -c / a;
  } else if (sgn(a) == 0) {
    s.center = Center::x_axis();
    z0 = -c / b;
  } else {
    s.center = Center::vertical(-b / a);
    z0 = -c / a;
  }
  if (sgn(z0) != 0) s.phi.emplace(Rational(0), z0);
  return s;
}

BranchSeries refined(const BranchSeries& s, int terms) {
  if (!s.graph) throw std::invalid_argument("branch has no defining graph to refine");
  return graph_branch(s.graph->first, s.graph->second, terms);
}

std::string to_string(const Valuation& v) {
  if (auto* m = std::get_if<MonomialValuation>(&v))
    return "Monomial(" + m->s.get_str() + ", " + m->t.get_str() + ")";
  if (auto* q = std::get_if<QuasimonomialValuation>(&v)) {
    if (q->is_root()) return "-deg";
    return "Quasimonomial(" + q->center.to_string() + ", z = " + puiseux_string(q->phi) +
           " + theta*w^(" + q->t.get_str() + "))";
  }
  if (auto* d = std::get_if<DivisorialValuation>(&v)) return "Divisorial(E" + std::to_string(d->divisor) + ")";
  if (auto* s = std::get_if<BranchSeries>(&v))
    return "Branch(" + s->center.to_string() + ", z = " + puiseux_string(s->phi) +
           (s->truncation ? " + O(w^(" + s->truncation->get_str() + "))" : "") + ")";
  return "Extensional(" + std::get<ExtensionalValuation>(v).name + ")";
}

}  // namespace affdyn
