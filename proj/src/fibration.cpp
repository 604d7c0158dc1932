#include <affdyn/fibration.hpp>

#include <affdyn/linalg.hpp>

#include <algorithm>
#include <future>
#include <random>

namespace affdyn {
namespace {

RationalFn2 power(const RationalFn2& g, int e) { return RationalFn2(g.num().pow(e), g.den().pow(e)); }

/// A with g∘f = A·g, when g∘f / g is constant.
std::optional<Rational> eigenvalue(const Endo2& f, const RationalFn2& g) {
  const RationalFn2 r = g.compose(f) / g;
  if (!r.is_constant()) return std::nullopt;
  return r.num().constant_term() / r.den().constant_term();
}

struct Scan {
  bool usable = false;
  std::vector<DensityCertificate> certs;
};

Scan scan_from(const Endo2& f, const Point& p, const HarvestOptions& opt) {
  const OrbitRecord orbit = iterate_orbit(f, p, monomial_count(opt.D_max) + 5, opt.height_cap);
  const int have = distinct_count(orbit);
  int D = opt.D_max;
  while (D >= 1 && monomial_count(D) > have) --D;
  Scan s;
  if (D < 1) return s;
  s.usable = true;
  s.certs = density_scan(orbit, D);
  return s;
}

std::vector<Scan> scan_all(const Endo2& f, const std::vector<Point>& starts, const HarvestOptions& opt) {
  std::vector<std::future<Scan>> jobs;
  for (const auto& p : starts)
    jobs.push_back(std::async(std::launch::async, [&f, p, &opt] { return scan_from(f, p, opt); }));
  std::vector<Scan> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

void collect(const Endo2& f, const Point& p, Scan&& s, const HarvestOptions& opt, HarvestReport& r) {
  if (!s.usable) return;
  r.starts.push_back(p);
  r.scans.push_back(std::move(s.certs));
  const auto& last = r.scans.back().back();
  if (last.verdict != DensityVerdict::curve_found) return;
  for (const auto& q : irreducible_components(*last.witness, opt.cap)) {
    if (std::any_of(r.curves.begin(), r.curves.end(), [&](const auto& c) { return c.P == q; })) continue;
    try {
      if (auto c = invariant_curve_test(f, q, opt.cap)) r.curves.push_back(std::move(*c));
    } catch (const FactorCapExceeded&) {
    }
  }
}

}  // namespace

std::string to_string(Invariance t) {
  return t == Invariance::totally_invariant ? "totally_invariant" : "invariant";
}

bool is_contracted(const Endo2& f, const Poly2& q) {
  return divides(q, jacobian_det(f.F(), q)) && divides(q, jacobian_det(f.G(), q));
}

std::vector<Poly2> contracted_curves(const Endo2& f, int cap) {
  std::vector<Poly2> out;
  const Poly2 J = jacobian_det(f);
  if (J.is_constant()) return out;
  for (const auto& q : irreducible_components(J, cap))
    if (is_contracted(f, q)) out.push_back(q);
  return out;
}

std::optional<InvariantCurve> invariant_curve_test(const Endo2& f, const Poly2& P, int cap) {
  if (P.is_constant()) throw std::invalid_argument("invariant_curve_test needs a nonconstant curve");
  InvariantCurve c;
  c.P = P.primitive();
  Poly2 rest = compose(c.P, f);
  for (;;) {
    auto [q, r] = divmod(rest, c.P);
    if (!r.is_zero()) break;
    rest = std::move(q);
    ++c.multiplicity;
  }
  if (c.multiplicity == 0) return std::nullopt;
  c.cofactor = factor(rest, cap);
  bool total = true;
  for (const auto& [q, m] : c.cofactor.factors) {
    c.contracted.push_back(is_contracted(f, q));
    total = total && c.contracted.back();
  }
  c.type = total ? Invariance::totally_invariant : Invariance::invariant;
  c.ramified = divides(c.P, jacobian_det(f));
  return c;
}

HarvestReport harvest_invariant_curves(const Endo2& f, const std::vector<Point>& starts,
                                       const HarvestOptions& opt) {
  HarvestReport r;
  auto scans = scan_all(f, starts, opt);
  for (std::size_t i = 0; i < starts.size(); ++i) collect(f, starts[i], std::move(scans[i]), opt, r);
  return r;
}

HarvestReport harvest_invariant_curves(const Endo2& f, const HarvestOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long> num(-9, 8), den(1, 3);
  auto draw = [&] {
    long a = num(rng);
    if (a >= 0) ++a;  // skip zero
    return frac(a, den(rng));
  };
  std::vector<Point> tried;
  auto fresh_direction = [&](const Point& p) {
    return std::none_of(tried.begin(), tried.end(), [&](const Point& q) {
      return p.first * q.second == p.second * q.first;
    });
  };
  HarvestReport r;
  int usable = 0;
  const int max_attempts = 8 * opt.trials;
  while (usable < opt.trials && static_cast<int>(tried.size()) < max_attempts) {
    std::vector<Point> batch;
    while (static_cast<int>(batch.size()) < opt.trials - usable) {
      Point p{draw(), draw()};
      if (!fresh_direction(p)) continue;
      tried.push_back(p);
      batch.push_back(p);
    }
    auto scans = scan_all(f, batch, opt);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      usable += scans[i].usable;
      collect(f, batch[i], std::move(scans[i]), opt, r);
    }
  }
  return r;
}

SemiInvariantReport build_semi_invariants(const Endo2& f, const std::vector<InvariantCurve>& curves) {
  SemiInvariantReport rep;
  for (const auto& c : curves)
    if (c.type == Invariance::totally_invariant && c.multiplicity == 1) rep.used.push_back(c.P);
  for (const auto& c : curves) {
    if (c.type != Invariance::totally_invariant || c.multiplicity != 1) continue;
    for (const auto& [q, m] : c.cofactor.factors)
      if (std::find(rep.basis.begin(), rep.basis.end(), q) == rep.basis.end()) rep.basis.push_back(q);
  }
  const auto index = [&](const Poly2& q) {
    return static_cast<int>(std::find(rep.basis.begin(), rep.basis.end(), q) - rep.basis.begin());
  };

  const int m = static_cast<int>(rep.used.size());
  const int s = static_cast<int>(rep.basis.size());
  std::vector<std::vector<Integer>> mat(s, std::vector<Integer>(m, 0));
  for (const auto& c : curves) {
    if (c.type != Invariance::totally_invariant || c.multiplicity != 1) continue;
    const int col = static_cast<int>(std::find(rep.used.begin(), rep.used.end(), c.P) - rep.used.begin());
    std::vector<int> v(s, 0);
    for (const auto& [q, mult] : c.cofactor.factors) v[index(q)] = mult;
    for (int i = 0; i < s; ++i) mat[i][col] = v[i];
    rep.cofactor_vectors.push_back(std::move(v));
  }

  if (m == 0) {
    rep.note = "need more curves: no totally invariant curve of multiplicity 1";
    return rep;
  }
  const auto kernel = kernel_basis(bareiss_echelon(mat), m);
  for (const auto& n : kernel) {
    Poly2 num(1L), den(1L);
    for (int i = 0; i < m; ++i) {
      const long e = n[i].get_si();
      if (e > 0) num *= rep.used[i].pow(static_cast<unsigned>(e));
      if (e < 0) den *= rep.used[i].pow(static_cast<unsigned>(-e));
    }
    SemiInvariant si{RationalFn2(num, den), 0, rep.used, n};
    if (si.g.is_constant()) continue;
    const auto A = eigenvalue(f, si.g);
    if (!A) throw std::logic_error("semi-invariant failed verification: " + si.g.to_string());
    si.A = *A;
    rep.semis.push_back(std::move(si));
  }
  if (rep.semis.empty())
    rep.note = "need more curves: no dependency among the contracted cofactors of " + std::to_string(m) +
               " curve(s)";
  return rep;
}

bool is_invariant_function(const Endo2& f, const RationalFn2& g) {
  return !g.is_constant() && g.compose(f) == g;
}

InvariantSearchReport invariant_function_search(const Endo2& f, const HarvestOptions& opt) {
  InvariantSearchReport rep;
  rep.contracted = contracted_curves(f, opt.cap);
  for (const auto& c : {RationalFn2(Poly2::x()), RationalFn2(Poly2::y())}) {
    if (is_invariant_function(f, c)) {
      rep.g = c;
      rep.note = "coordinate function is invariant";
      return rep;
    }
  }
  rep.harvest = harvest_invariant_curves(f, opt);
  rep.semi = build_semi_invariants(f, rep.harvest.curves);
  const auto& semis = rep.semi.semis;
  for (const auto& s : semis) {
    if (s.A == 1 && is_invariant_function(f, s.g)) {
      rep.g = s.g;
      return rep;
    }
  }
  // A_i^m = A_j^n makes g_i^m / g_j^n invariant.
  for (std::size_t i = 0; i < semis.size(); ++i) {
    for (std::size_t j = i; j < semis.size(); ++j) {
      for (int a = 1; a <= kMaxRatioExponent; ++a) {
        for (int b = 1; b <= kMaxRatioExponent; ++b) {
          if (i == j && a <= b) continue;
          Rational lhs = 1, rhs = 1;
          for (int k = 0; k < a; ++k) lhs *= semis[i].A;
          for (int k = 0; k < b; ++k) rhs *= semis[j].A;
          if (lhs != rhs) continue;
          const RationalFn2 g =
              i == j ? power(semis[i].g, a - b) : power(semis[i].g, a) / power(semis[j].g, b);
          if (is_invariant_function(f, g)) {
            rep.g = g;
            return rep;
          }
        }
      }
    }
  }
  rep.note = "none found up to budget";
  return rep;
}

}  // namespace affdyn
