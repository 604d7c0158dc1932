#include <affdyn/modp.hpp>
#include <affdyn/suite.hpp>
#include <affdyn/valdyn.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace affdyn;

namespace {

Endo2 E(const char* s) { return parse_endo(s); }
Poly2 P(const char* s) { return parse_poly(s); }

const QuadraticNumber kPhi(Rational(1, 2), Rational(1, 2), 5);

MonomialValuation mono(const Valuation& v) { return std::get<MonomialValuation>(v); }

}  // namespace

TEST(AlgebraicTest, QuadraticArithmetic) {
  const QuadraticNumber s5(0, 1, 5);
  EXPECT_EQ(s5 * s5, QuadraticNumber(5));
  EXPECT_EQ(kPhi * kPhi, kPhi + QuadraticNumber(1));
  EXPECT_EQ(kPhi.minimal_polynomial(), UPoly({-1, -1, 1}));
  EXPECT_EQ(QuadraticNumber(0, 1, 12), QuadraticNumber(0, 2, 3));
  EXPECT_TRUE(QuadraticNumber(0, 3, 4).is_rational());
  EXPECT_LT(QuadraticNumber(Rational(161, 100)), kPhi);
  EXPECT_GT(QuadraticNumber(Rational(162, 100)), kPhi);
  EXPECT_EQ(QuadraticNumber(1) / kPhi, kPhi - QuadraticNumber(1));
  EXPECT_EQ(kPhi.to_string(), "1/2 + 1/2*sqrt(5)");
}

TEST(AlgebraicTest, RootIsolation) {
  // (z² − 2)(z − 3)
  const UPoly p = UPoly({-2, 0, 1}) * UPoly({-3, 1});
  const auto roots = isolate_real_roots(p, Rational(1, 1000));
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_LT(roots[0].first, -1.414);
  EXPECT_GE(roots[0].second, -1.415);
  EXPECT_LT(roots[2].first, 3);
  EXPECT_GE(roots[2].second, 3);
  auto q = quadratic_roots(UPoly({-1, -1, 1}));
  ASSERT_TRUE(q && q->size() == 2u);
  EXPECT_EQ(q->back(), kPhi);
  const Rational u = root_upper_bound(21, 6, Rational(1, 1000000));
  EXPECT_GE(u * u * u * u * u * u, 21);
  EXPECT_LT(u.get_d() - std::pow(21.0, 1.0 / 6), 1e-6);
}

TEST(ModpTest, ResultantAndInterpolation) {
  modp::Field k(modp::next_prime(1000003));
  // res(t − 2, t² + 1) = 5
  EXPECT_EQ(modp::resultant(k, {k.neg(2), 1}, {1, 0, 1}), 5u);
  // res(t² − 1, t² − 4) = Π over a = ±1 of (a² − 4) = 9
  EXPECT_EQ(modp::resultant(k, {k.neg(1), 0, 1}, {k.neg(4), 0, 1}), 9u);
  const modp::Poly p{3, 0, 5, 1};
  std::vector<modp::u64> xs{1, 2, 3, 4}, ys;
  for (auto x : xs) ys.push_back(modp::eval(k, p, x));
  EXPECT_EQ(modp::interpolate(k, xs, ys), p);
  EXPECT_FALSE(modp::is_squarefree(k, modp::mul(k, {1, 1}, {1, 1})));
}

TEST(ValdynTest, LocalDegree) {
  const Endo2 f = E("(y, x*y)");
  EXPECT_EQ(d_of(f, MonomialValuation()), 2);
  for (Rational s : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)})
    EXPECT_EQ(d_of(f, MonomialValuation(s, 1)), s + 1);
  const Endo2 id = Endo2::identity();
  EXPECT_EQ(d_of(id, MonomialValuation(Rational(1, 3), 1)), 1);
  EXPECT_EQ(d_of(id, QuasimonomialValuation{Center::vertical(2), {}, Rational(-1, 2)}), 1);
}

TEST(ValdynTest, Pushforward) {
  const Rational s(2, 5);
  auto w = pushforward(E("(y, x*y)"), MonomialValuation(s, 1));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->eval(P("x")), -1);
  EXPECT_EQ(w->eval(P("y")), ExtRational(Rational(-(s + 1))));
  auto u = pushforward(E("(x^2, y^2)"), MonomialValuation());
  ASSERT_TRUE(u);
  EXPECT_EQ(u->eval(P("x")), -2);
  EXPECT_EQ(u->eval(P("y")), -2);
  // f_*v is a valuation.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> c(-3, 3), e(0, 3);
  auto rnd = [&] {
    Poly2 p;
    for (int k = 0; k < 3; ++k) p += Poly2::monomial(e(rng), e(rng), c(rng));
    return p.is_zero() ? Poly2(1) : p;
  };
  const Endo2 g = E("(x + y^2, x*y - 1)");
  auto gv = pushforward(g, QuasimonomialValuation{Center::vertical(1), {{Rational(1, 2), 3}}, 0});
  ASSERT_TRUE(gv);
  for (int k = 0; k < 100; ++k) {
    const Poly2 p = rnd(), q = rnd();
    EXPECT_EQ(gv->eval(p * q).value(), gv->eval(p).value() + gv->eval(q).value());
    if (!(p + q).is_zero()) EXPECT_GE(gv->eval(p + q), std::min(gv->eval(p), gv->eval(q)));
  }
}

TEST(ValdynTest, CollapseIsReported) {
  // On the branch of x = 0, v(x) = +∞ and v(xy + 1) = 0, so d = 0.
  const Endo2 f = E("(x, x*y + 1)");
  const BranchSeries axis = line_branch(1, 0, 0);  // the line x = 0
  EXPECT_EQ(d_of(f, axis), 0);
  EXPECT_FALSE(pushforward(f, axis));
  EXPECT_THROW(normalize_action(f, axis), Collapsed);
}

TEST(ValdynTest, NormalizedAction) {
  const Endo2 f = E("(y, x*y)");
  for (Rational s : {Rational(0), Rational(1, 3), Rational(1)})
    EXPECT_EQ(mono(normalize_action(f, MonomialValuation(s, 1))),
              MonomialValuation(1 / (s + 1), 1));
  EXPECT_EQ(mono(normalize_action(f, MonomialValuation())), MonomialValuation(Rational(1, 2), 1));
  const Endo2 sq = E("(x^2, y^2)");
  for (auto [s, t] : {std::pair<Rational, Rational>{Rational(1, 3), 1}, {1, Rational(2, 7)}})
    EXPECT_EQ(mono(normalize_action(sq, MonomialValuation(s, t))), MonomialValuation(s, t));
  // Initial forms x + y and (x + y)² are dependent: the image is not monomial.
  auto w = normalize_action(E("(x + y, (x + y)^2 + x)"), MonomialValuation());
  EXPECT_TRUE(std::holds_alternative<ExtensionalValuation>(w));
}

TEST(ValdynTest, CocycleLawOnMonomialMaps) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> e(0, 3);
  std::uniform_int_distribution<long> w(0, 6);
  auto monomial_map = [&] {
    for (;;) {
      int a = e(rng), b = e(rng), c = e(rng), d = e(rng);
      if (a * d - b * c == 0 || a + b == 0 || c + d == 0) continue;
      return Endo2(Poly2::monomial(a, b), Poly2::monomial(c, d));
    }
  };
  for (int k = 0; k < 40; ++k) {
    const Endo2 f = monomial_map(), g = monomial_map();
    const Rational r = frac(w(rng), 6);
    const MonomialValuation v = k % 2 ? MonomialValuation(r, 1) : MonomialValuation(1, r);
    const Rational dg = d_of(g, v);
    if (sgn(dg) == 0) continue;
    const Valuation gv = normalize_action(g, v);
    // f ∘ g = g followed by f
    EXPECT_EQ(d_of(g.then(f), v), d_of(f, gv) * dg) << f.to_string() << " " << g.to_string();
  }
}

TEST(ValdynTest, DegreeGrowthFibonacci) {
  const auto g = degree_growth(E("(y, x*y)"), 6);
  EXPECT_EQ(g.degrees, (std::vector<long>{2, 3, 5, 8, 13, 21}));
  ASSERT_TRUE(g.recurrence);
  EXPECT_EQ(*g.recurrence, (std::vector<long>{1, 1}));
  ASSERT_TRUE(g.minimal_polynomial);
  EXPECT_EQ(*g.minimal_polynomial, UPoly({-1, -1, 1}));
  ASSERT_TRUE(g.lambda1);
  EXPECT_EQ(*g.lambda1, kPhi);
  EXPECT_NEAR(g.lambda1_lo.get_d(), 1.6180339887498949, 1e-12);
  EXPECT_NEAR(g.lambda1_hi.get_d(), 1.6180339887498949, 1e-12);
  EXPECT_TRUE(g.submultiplicative());
}

TEST(ValdynTest, DegreeGrowthExamples) {
  const auto sq = degree_growth(E("(x^2, y^2)"), 4);
  EXPECT_EQ(sq.degrees, (std::vector<long>{2, 4, 8, 16}));
  EXPECT_EQ(*sq.lambda1, QuadraticNumber(2));
  EXPECT_FALSE(sq.dominant_repeated);

  const auto lin = degree_growth(E("(x^2, x*y^2)"), 8);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(lin.degrees[n - 1], (n + 2L) << (n - 1)) << n;
  EXPECT_EQ(*lin.lambda1, QuadraticNumber(2));
  EXPECT_EQ(lin.lambda1_multiplicity, 2);
  EXPECT_TRUE(lin.dominant_repeated);
  // The tail beyond the exact cap comes from the modular restriction.
  EXPECT_FALSE(lin.exact.back());
}

TEST(ValdynTest, ModularDegreesMatchExact) {
  for (const char* s : {"(y, x*y)", "(x + y^2, x*y - 3)", "(y, 2*x + y^3 - y)", "(x^2, x*y^2)"}) {
    const Endo2 f = E(s);
    DegreeGrowthOptions exact, modular;
    exact.exact_degree_cap = 4096;
    modular.exact_degree_cap = 0;
    EXPECT_EQ(degree_growth(f, 5, exact).degrees, degree_growth(f, 5, modular).degrees) << s;
  }
}

TEST(ValdynTest, DegreeCapReportsPartialData) {
  DegreeGrowthOptions o;
  o.degree_cap = 100;
  const auto g = degree_growth(E("(x^3, y^3)"), 8, o);
  EXPECT_TRUE(g.partial);
  EXPECT_EQ(g.degrees, (std::vector<long>{3, 9, 27, 81}));
}

TEST(ValdynTest, LambdaOneOfIterates) {
  const std::vector<std::pair<const char*, int>> cases{
      {"(y, x*y)", 2}, {"(y, x*y)", 3}, {"(x^2, x*y^2)", 2}, {"(y, x + y^2)", 2}, {"(y, x + y^2)", 3}};
  for (auto [s, k] : cases) {
    const Endo2 f = E(s);
    const auto l1 = *degree_growth(f, 10).lambda1;
    const auto gk = degree_growth(iterate_endo(f, k), 5);
    ASSERT_TRUE(gk.lambda1) << s << " k=" << k;
    EXPECT_EQ(*gk.lambda1, l1.pow(k)) << s << " k=" << k;
  }
}

TEST(ValdynTest, Recurrences) {
  EXPECT_EQ(*find_recurrence({2, 2, 4, 4, 8, 8}), (std::vector<long>{0, 2}));
  EXPECT_EQ(*find_recurrence({1, 1, 1}), (std::vector<long>{1}));
  EXPECT_FALSE(find_recurrence({1, 2}));
  // n² needs order 3 and seven terms.
  EXPECT_FALSE(find_recurrence({1, 4, 9, 16, 25, 36}));
  EXPECT_EQ(*find_recurrence({1, 4, 9, 16, 25, 36, 49}), (std::vector<long>{3, -3, 1}));
}

TEST(ValdynTest, TopologicalDegree) {
  for (auto [s, want] : {std::pair<const char*, int>{"(x^2, y^2)", 4}, {"(x^2, y^3)", 6},
                         {"(y, x*y)", 1}}) {
    const auto r = lambda2(E(s));
    EXPECT_EQ(r.value, want) << s;
    int agreeing = 0;
    for (int d : r.generic_trials) agreeing += d == want;
    EXPECT_GE(agreeing, 3) << s;
    EXPECT_TRUE(r.modp_agrees) << s;
    EXPECT_NE(r.prime, 0u);
  }
}

TEST(ValdynTest, TopologicalDegreeIsMultiplicative) {
  const std::vector<Endo2> maps{E("(x^2, y^3)"), E("(2*x^3 + 1, y^2 - 1)"), E("(x, y^2 + 3)"),
                                E("(x^2 - 2, -y)")};
  for (const auto& f : maps)
    for (const auto& g : maps)
      EXPECT_EQ(lambda2(g.then(f)).value, lambda2(f).value * lambda2(g).value);
}

TEST(ValdynTest, DegreeInequality) {
  const auto sq = check_degree_inequality(E("(x^2, y^2)"));
  EXPECT_TRUE(sq.decided && sq.holds && sq.resonant);
  const auto fib = check_degree_inequality(E("(y, x*y)"));
  EXPECT_TRUE(fib.decided && fib.holds && !fib.resonant);
  EXPECT_EQ(*fib.lambda1_sq, kPhi + QuadraticNumber(1));
  const auto mixed = check_degree_inequality(E("(x^2, y^3)"));
  EXPECT_EQ(*mixed.lambda1_sq, QuadraticNumber(9));
  EXPECT_EQ(mixed.lambda2, 6);
  EXPECT_TRUE(mixed.holds && !mixed.resonant);
}

TEST(ValdynTest, DegreeInequalityOnRandomSuite) {
  const auto suite = random_dominant_suite(50, 20240601);
  ASSERT_EQ(suite.size(), 50u);
  for (const auto& m : suite) {
    const auto r = check_degree_inequality(degree_growth(m.f, 6), lambda2(m.f).value);
    EXPECT_TRUE(r.decided && r.holds) << m.f.to_string();
    EXPECT_EQ(r.resonant, m.coordinatewise_power) << m.family << " " << m.f.to_string();
  }
}

TEST(ValdynTest, GenericEqualDegreeMapsAreResonant) {
  // A dense quadratic map extends to P², so λ1² = λ2 = 4 (case 1 of the classification).
  const auto r = resonance_classify(E("(x^2 + 3*x*y - y^2 + x, 2*x^2 - x*y + y^2 - y + 1)"), 6);
  EXPECT_EQ(r.tag, Resonance::resonant_bounded);
  EXPECT_EQ(r.lambda2, 4);
}

TEST(ValdynTest, ResonanceClassification) {
  const auto sq = resonance_classify(E("(x^2, y^2)"));
  EXPECT_EQ(sq.tag, Resonance::resonant_bounded);
  for (double r : sq.ratios) EXPECT_DOUBLE_EQ(r, 1.0);

  const auto lin = resonance_classify(E("(x^2, x*y^2)"));
  EXPECT_EQ(lin.tag, Resonance::resonant_linear_growth);
  ASSERT_TRUE(lin.shape);
  EXPECT_EQ(lin.shape->l, 2);
  EXPECT_EQ(lin.shape->a0, UPoly::var());
  for (std::size_t n = 1; n <= lin.ratios.size(); ++n)
    EXPECT_DOUBLE_EQ(lin.ratios[n - 1], (n + 2) / 2.0);

  EXPECT_EQ(resonance_classify(E("(y, x*y)")).tag, Resonance::general);

  const auto few = resonance_classify(E("(y, x*y)"), 2);
  EXPECT_EQ(few.tag, Resonance::inconclusive);
  EXPECT_GT(few.needed_N, 2);
}

TEST(ValdynTest, EigenvaluationFibonacci) {
  const Endo2 f = E("(y, x*y)");
  const auto r = eigenvaluation_iterate(f, MonomialValuation(), 30);
  ASSERT_EQ(r.verdict, "fixed");
  EXPECT_LE(r.trajectory.size(), 31u);
  const double target = (std::sqrt(5.0) - 1) / 2;
  const auto last = mono(r.trajectory.back());
  EXPECT_LT(std::abs(last.s.get_d() - target), 1e-6);
  EXPECT_EQ(last.t, 1);
  // s_{n+1} = 1/(1 + s_n)
  for (std::size_t k = 1; k < r.trajectory.size(); ++k)
    EXPECT_EQ(mono(r.trajectory[k]).s, 1 / (1 + mono(r.trajectory[k - 1]).s));

  ASSERT_TRUE(r.fixed);
  EXPECT_EQ(r.fixed->s, kPhi - QuadraticNumber(1));
  EXPECT_EQ(r.fixed->t, QuadraticNumber(1));
  EXPECT_EQ(*r.d_fixed, *degree_growth(f, 6).lambda1);
  EXPECT_EQ(*r.alpha, kPhi - QuadraticNumber(1));
  EXPECT_GE(r.alpha->sign(), 0);
  EXPECT_LE(r.thinness->sign(), 0);
  EXPECT_EQ(*r.thinness, -kPhi);
  // Skewness of the last rational iterate through the blow-up chain agrees
  // with the segment value min(s, t).
  EXPECT_EQ(skewness(Valuation(last)), ExtRational(last.s));
  EXPECT_EQ(thinness(Valuation(last)), ExtRational(-1 - last.s));

  // |d(f, v_n) − λ1| decreases after the first step.
  for (std::size_t k = 2; k < r.d_values.size(); ++k)
    EXPECT_LT(std::abs(r.d_values[k].get_d() - kPhi.to_double()),
              std::abs(r.d_values[k - 1].get_d() - kPhi.to_double()));
}

TEST(ValdynTest, EigenvaluationOtherMaps) {
  const auto sq = eigenvaluation_iterate(E("(x^2, y^2)"), MonomialValuation(), 30);
  EXPECT_EQ(sq.verdict, "fixed");
  EXPECT_TRUE(sq.converged);
  EXPECT_EQ(sq.trajectory.size(), 2u);
  EXPECT_EQ(*sq.d_fixed, QuadraticNumber(2));
  EXPECT_EQ(sq.fixed->s, QuadraticNumber(1));

  // Resonant (x², xy²): the iteration creeps toward Monomial(0, 1), which is
  // identified exactly.
  const auto lin = eigenvaluation_iterate(E("(x^2, x*y^2)"), MonomialValuation(), 30);
  EXPECT_EQ(lin.verdict, "fixed");
  EXPECT_FALSE(lin.converged);
  EXPECT_EQ(lin.fixed->s, QuadraticNumber(0));
  EXPECT_EQ(*lin.d_fixed, QuadraticNumber(2));
}

TEST(ValdynTest, ThetaStar) {
  const auto sq = theta_star_approx(E("(x^2, y^2)"), MonomialValuation(), 5, 2);
  ASSERT_EQ(sq.ratios.size(), 5u);
  for (const auto& r : sq.ratios) EXPECT_EQ(r, QuadraticNumber(1));

  const Endo2 f = E("(y, x*y)");
  const auto fib = theta_star_approx(f, MonomialValuation(), 6, kPhi);
  ASSERT_EQ(fib.ratios.size(), 6u);
  EXPECT_EQ(fib.ratios[5], QuadraticNumber(21) / kPhi.pow(6));
  EXPECT_NEAR(fib.ratios[5].to_double(), 1.1703, 1e-4);

  const auto star = eigenvaluation_iterate(f, MonomialValuation(), 30);
  const auto at_star = theta_star_approx(f, *star.fixed, 6, kPhi);
  for (const auto& r : at_star.ratios) EXPECT_EQ(r, QuadraticNumber(1));

  const auto col = theta_star_approx(E("(x, x*y + 1)"), line_branch(1, 0, 0), 3, 1);
  EXPECT_EQ(col.collapse_stage, 1);
}
