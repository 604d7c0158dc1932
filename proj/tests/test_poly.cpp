#include <affdyn/factor.hpp>
#include <affdyn/poly.hpp>
#include <affdyn/rational_fn.hpp>
#include <affdyn/upoly.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace affdyn;

namespace {

Poly2 P(const char* s) { return parse_poly(s); }

Poly2 random_poly(std::mt19937& rng, int deg) {
  std::uniform_int_distribution<int> c(-3, 3);
  Poly2 r;
  for (int d = 0; d <= deg; ++d)
    for (int i = 0; i <= d; ++i) r.add_term(i, d - i, c(rng));
  return r;
}

}  // namespace

TEST(Parse, SpecExamples) {
  Poly2 p = P("x^2*y + 3/2*x - 1");
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.coeff(2, 1), 1);
  EXPECT_EQ(p.coeff(1, 0), Rational(3, 2));
  EXPECT_EQ(p.coeff(0, 0), -1);
  EXPECT_EQ(P("0*x + y"), Poly2::y());
  EXPECT_EQ(P("(x+y+1)*x"), P("x^2 + x*y + x"));
}

TEST(Parse, RoundTripAndErrors) {
  for (const char* s : {"x^2*y + 3/2*x - 1", "-x^3 + 2*x*y^2 - 5/7", "0", "y"})
    EXPECT_EQ(P(s).to_string(), s);
  try {
    parse_poly("x + * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_poly("x/0"), ParseError);
  EXPECT_THROW(parse_poly("(x+y"), ParseError);
  EXPECT_EQ(P("123456789012345678901234567890*x").coeff(1, 0),
            Rational("123456789012345678901234567890"));
}

TEST(Degree, ZeroSentinel) {
  EXPECT_EQ(Poly2().degree(), kDegreeOfZero);
  EXPECT_LT(Poly2().degree(), Poly2(1).degree());
}

TEST(Compose, SpecExamples) {
  Endo2 f = parse_endo("((x+y+1)*x, (x+y+1)*y)");
  EXPECT_EQ(compose(P("y - 5*x"), f), P("(x+y+1)*(y-5*x)"));
  EXPECT_EQ(compose(Poly2::x(), f), f.F());
  Endo2 g = parse_endo("(y, x*y)");
  EXPECT_EQ(compose(P("x*y"), g), P("x*y^2"));
}

TEST(Iterate, SpecExamples) {
  Endo2 f = parse_endo("(y, x*y)");
  EXPECT_EQ(iterate_endo(f, 2), parse_endo("(x*y, x*y^2)"));
  EXPECT_EQ(iterate_endo(f, 3), parse_endo("(x*y^2, x^2*y^3)"));
  EXPECT_EQ(iterate_endo(f, 0), Endo2::identity());
  EXPECT_THROW(iterate_endo(f, 30, 100), DegreeCapExceeded);
}

TEST(Jacobian, SpecExamples) {
  EXPECT_EQ(jacobian_det(parse_endo("(x^2, y^2)")), P("4*x*y"));
  EXPECT_EQ(jacobian_det(parse_endo("((x+y+1)*x, (x+y+1)*y)")), P("(x+y+1)*(2*x+2*y+1)"));
  EXPECT_EQ(jacobian_det(Endo2::identity()), Poly2(1));
  EXPECT_THROW(parse_endo("(x+y, 2*x+2*y)"), std::invalid_argument);
}

TEST(Resultant, SpecExamples) {
  EXPECT_EQ(resultant(P("y - x^2"), P("y - x^2 - 1"), Var::y), Poly2(-1));
  EXPECT_EQ(resultant(P("x^2 - 4"), P("x - 2"), Var::x), Poly2(0));
  EXPECT_EQ(resultant(Poly2::x(), Poly2::y(), Var::x), Poly2::y());
  EXPECT_THROW(resultant(Poly2::y(), P("y+1"), Var::x), std::invalid_argument);
  // Res_x(x^2 - y, x - 1) = 1 - y.
  EXPECT_EQ(resultant(P("x^2 - y"), P("x - 1"), Var::x), P("1 - y"));
}

TEST(Factor, SpecExamples) {
  auto f = factor(P("(x+y+1)*(2*x+2*y+1)"));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].second, 1);
  EXPECT_EQ(f.factors[1].second, 1);
  EXPECT_EQ(f.expand(), P("(x+y+1)*(2*x+2*y+1)"));

  auto m = factor(P("x^2*y"));
  ASSERT_EQ(m.factors.size(), 2u);
  EXPECT_EQ(m.factors[0], std::make_pair(Poly2::x(), 2));
  EXPECT_EQ(m.factors[1], std::make_pair(Poly2::y(), 1));

  auto s = factor(P("x^2 + y^2"));
  ASSERT_EQ(s.factors.size(), 1u);
  EXPECT_EQ(s.factors[0].first, P("x^2 + y^2"));
  EXPECT_THROW(factor(P("x^25 + y")), FactorCapExceeded);
}

TEST(Factor, HarderCases) {
  // Factors that only separate after recombination (x^4+1 splits mod every prime).
  Poly2 p = P("(x^4 + y^4)*(x^2 - 2*y^2 + x)^2*(x*y - 1)");
  auto f = factor(p);
  EXPECT_EQ(f.expand(), p);
  ASSERT_EQ(f.factors.size(), 3u);
  Poly2 q = P("(y - x^3)*(y^2 - x^3 - x)*(x + 3*y + 7)");
  auto g = factor(q);
  EXPECT_EQ(g.factors.size(), 3u);
  EXPECT_EQ(g.expand(), q);
}

TEST(Factor, Univariate) {
  UPoly u({-1, 0, 0, 0, 1});  // t^4 - 1
  auto f = factor_univariate(u);
  EXPECT_EQ(f.factors.size(), 3u);
  // Swinnerton-Dyer style: t^4 - 10t^2 + 1 irreducible, splits mod all p.
  EXPECT_EQ(factor_univariate(UPoly({1, 0, -10, 0, 1})).factors.size(), 1u);
  EXPECT_EQ(rational_roots(UPoly({6, -5, 1})), (std::vector<Rational>{2, 3}));
}

TEST(Properties, RingLawsAndDegree) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Poly2 g = random_poly(rng, 2), h = random_poly(rng, 3);
    Poly2 F = random_poly(rng, 3), G = random_poly(rng, 2);
    if (jacobian_det(F, G).is_zero()) continue;
    Endo2 f(F, G);
    EXPECT_EQ(compose(g * h, f), compose(g, f) * compose(h, f));
    EXPECT_LE(compose(g, f).degree(), std::max(0, g.degree() * f.degree()));
  }
}

TEST(Properties, FactorRoundTripAndResultant) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    Poly2 a = random_poly(rng, 2), b = random_poly(rng, 2), c = random_poly(rng, 1);
    if (a.degree() < 1 || b.degree() < 1 || c.degree() < 1) continue;
    Poly2 p = a * b * c;
    auto f = factor(p);
    EXPECT_EQ(f.expand(), p);
    for (const auto& [q, e] : f.factors) EXPECT_TRUE(divides(q, p));
    // Shared factor c forces a zero resultant.
    Poly2 r = resultant(a * c, b * c, Var::x);
    bool shares_x = c.degree_x() > 0;
    if (shares_x) EXPECT_TRUE(r.is_zero());
    // gcd agrees with factor: coprime iff resultants vanish in neither variable.
    bool coprime = gcd(a, b).is_constant();
    if (a.degree_x() > 0 && b.degree_x() > 0)
      EXPECT_EQ(resultant(a, b, Var::x).is_zero(), !coprime);
  }
}

TEST(RationalFn, NormalizeAndCompose) {
  RationalFn2 g(P("x^2 - y^2"), P("2*x + 2*y"));
  EXPECT_EQ(g.num(), P("1/2*x - 1/2*y"));
  EXPECT_EQ(g.den(), Poly2(1));
  RationalFn2 h(P("x"), P("y"));
  Endo2 f = parse_endo("((x+y+1)*x, (x+y+1)*y)");
  EXPECT_EQ(h.compose(f), h);
  EXPECT_EQ(h.eval(3, 2), Rational(3, 2));
  EXPECT_THROW(h.eval(1, 0), std::domain_error);
}
