#include <affdyn/fibration.hpp>

#include <gtest/gtest.h>

using namespace affdyn;

namespace {

Endo2 E(const char* s) { return parse_endo(s); }
Poly2 P(const char* s) { return parse_poly(s); }

const char* kPencil = "((x + y + 1)*x, (x + y + 1)*y)";

}  // namespace

TEST(ContractedTest, Examples) {
  EXPECT_EQ(contracted_curves(E(kPencil)), std::vector<Poly2>{P("x + y + 1")});
  EXPECT_FALSE(is_contracted(E(kPencil), P("2*x + 2*y + 1")));
  EXPECT_EQ(contracted_curves(E("(x^2, x*y^2)")), std::vector<Poly2>{P("x")});
  EXPECT_TRUE(contracted_curves(E("(x^2, y^2)")).empty());
  EXPECT_TRUE(contracted_curves(E("(x + y^2, y)")).empty());
}

TEST(ContractedTest, AgreesWithSubstitution) {
  // Along y = -x - 1 the pencil map is (0, 0); along 2x + 2y + 1 = 0 it moves.
  const Endo2 f = E(kPencil);
  for (long t = -3; t <= 3; ++t) {
    EXPECT_EQ(f(t, -t - 1), std::make_pair(Rational(0), Rational(0)));
  }
  EXPECT_NE(f(0, frac(-1, 2)), f(1, frac(-3, 2)));
}

TEST(InvariantCurveTest, Examples) {
  const Endo2 pencil = E(kPencil);
  for (long c = -2; c <= 3; ++c) {
    const auto r = invariant_curve_test(pencil, P("y") - Poly2::x().scaled(c));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->multiplicity, 1);
    EXPECT_EQ(r->type, Invariance::totally_invariant);
    ASSERT_EQ(r->cofactor.factors.size(), 1u);
    EXPECT_EQ(r->cofactor.factors[0].first, P("x + y + 1"));
  }

  const Endo2 sq = E("(x^2, y^2)");
  const auto diag = invariant_curve_test(sq, P("y - x"));
  ASSERT_TRUE(diag);
  EXPECT_EQ(diag->multiplicity, 1);
  EXPECT_EQ(diag->type, Invariance::invariant);
  ASSERT_EQ(diag->cofactor.factors.size(), 1u);
  EXPECT_EQ(diag->cofactor.factors[0].first, P("x + y"));
  EXPECT_FALSE(diag->contracted[0]);

  const auto axis = invariant_curve_test(sq, P("x"));
  ASSERT_TRUE(axis);
  EXPECT_EQ(axis->multiplicity, 2);
  EXPECT_EQ(axis->type, Invariance::totally_invariant);
  EXPECT_TRUE(axis->ramified);

  EXPECT_FALSE(invariant_curve_test(sq, P("x + y - 1")));
}

TEST(InvariantCurveTest, WitnessDividesPullback) {
  const Endo2 sq = E("(x^2, y^2)");
  const auto par = invariant_curve_test(sq, P("y - x^2"));
  ASSERT_TRUE(par);
  EXPECT_EQ(par->multiplicity, 1);
  EXPECT_FALSE(par->ramified);
  EXPECT_EQ(par->P.pow(par->multiplicity) * par->cofactor.expand(), compose(par->P, sq));
}

TEST(HarvestTest, PencilLines) {
  const auto r = harvest_invariant_curves(E(kPencil), HarvestOptions{.trials = 5});
  EXPECT_EQ(r.starts.size(), 5u);
  int lines = 0;
  for (const auto& c : r.curves) {
    EXPECT_TRUE(divides(c.P, compose(c.P, E(kPencil))));
    // y − c x: degree one without constant term.
    if (c.P.degree() == 1 && sgn(c.P.constant_term()) == 0) ++lines;
  }
  EXPECT_GE(lines, 5);
}

TEST(HarvestTest, DenseMapHarvestsNothing) {
  const auto r = harvest_invariant_curves(E("(2*x, 3*y)"), HarvestOptions{.trials = 5, .D_max = 4});
  EXPECT_EQ(r.starts.size(), 5u);
  EXPECT_TRUE(r.curves.empty());
  for (const auto& s : r.scans) {
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s.back().verdict, DensityVerdict::dense_up_to_D);
  }
}

TEST(HarvestTest, ParabolaFromGivenStart) {
  const auto r = harvest_invariant_curves(E("(x^2, y^2)"), {{2, 4}}, HarvestOptions{.D_max = 3});
  ASSERT_EQ(r.curves.size(), 1u);
  EXPECT_EQ(r.curves[0].P, P("y - x^2").primitive());
  EXPECT_EQ(r.curves[0].multiplicity, 1);
}

TEST(SemiInvariantTest, PencilGivesInvariantRatio) {
  const Endo2 f = E(kPencil);
  std::vector<InvariantCurve> curves;
  for (const char* s : {"y - x", "y - 2*x", "y - 3*x"}) curves.push_back(*invariant_curve_test(f, P(s)));
  const auto rep = build_semi_invariants(f, curves);
  EXPECT_EQ(rep.basis, std::vector<Poly2>{P("x + y + 1")});
  ASSERT_EQ(rep.semis.size(), 2u);
  for (const auto& s : rep.semis) {
    EXPECT_EQ(s.A, 1);
    EXPECT_TRUE(is_invariant_function(f, s.g));
    EXPECT_EQ(s.g.degree(), 1);
  }
}

TEST(SemiInvariantTest, RejectsAndNotes) {
  const Endo2 sq = E("(x^2, y^2)");
  const auto axes = build_semi_invariants(sq, {*invariant_curve_test(sq, P("x")), *invariant_curve_test(sq, P("y"))});
  EXPECT_TRUE(axes.semis.empty());
  EXPECT_NE(axes.note.find("need more curves"), std::string::npos);

  const Endo2 pencil = E(kPencil);
  const auto single = build_semi_invariants(pencil, {*invariant_curve_test(pencil, P("y - x"))});
  EXPECT_TRUE(single.semis.empty());
  EXPECT_NE(single.note.find("need more curves"), std::string::npos);

  // No contracted curves: each totally invariant curve is an eigenfunction.
  const Endo2 lin = E("(2*x, 3*y)");
  const auto eig = build_semi_invariants(lin, {*invariant_curve_test(lin, P("x")), *invariant_curve_test(lin, P("y"))});
  ASSERT_EQ(eig.semis.size(), 2u);
  EXPECT_EQ(eig.semis[0].A, 2);
  EXPECT_EQ(eig.semis[1].A, 3);
}

TEST(SemiInvariantTest, PigeonholeOnRandomPencils) {
  // ((l + 1)x, (l + 1)y) for a random linear form l: lines through the origin
  // are totally invariant with cofactor l + 1, so three of them give g.
  for (long a = 1; a <= 3; ++a) {
    for (long b = -2; b <= 2; ++b) {
      if (b == 0) continue;
      const Poly2 l = Poly2::x().scaled(a) + Poly2::y().scaled(b) + Poly2(1L);
      const Endo2 f(l * Poly2::x(), l * Poly2::y());
      std::vector<InvariantCurve> curves;
      for (long c = 1; c <= 3; ++c) {
        const Poly2 line = Poly2::y() - Poly2::x().scaled(c * 5 + 1);
        curves.push_back(*invariant_curve_test(f, line));
      }
      const auto rep = build_semi_invariants(f, curves);
      ASSERT_FALSE(rep.semis.empty());
      for (const auto& s : rep.semis) EXPECT_EQ(s.g.compose(f), s.g * RationalFn2(Poly2(s.A)));
    }
  }
}

TEST(InvariantSearchTest, Examples) {
  const Endo2 pencil = E(kPencil);
  const auto found = invariant_function_search(pencil);
  ASSERT_TRUE(found.g);
  EXPECT_TRUE(is_invariant_function(pencil, *found.g));

  const auto none = invariant_function_search(E("(2*x, 3*y)"), HarvestOptions{.trials = 5, .D_max = 4});
  EXPECT_FALSE(none.g);
  EXPECT_EQ(none.note, "none found up to budget");

  const auto id = invariant_function_search(Endo2::identity());
  ASSERT_TRUE(id.g);
  EXPECT_EQ(*id.g, RationalFn2(Poly2::x()));
}

TEST(InvariantSearchTest, RatioCombination) {
  // Axes are eigenfunctions with A = 2 and A = 4, so x^2/y is invariant.
  const Endo2 f = E("(2*x, 4*y)");
  const auto r = invariant_function_search(f, HarvestOptions{.trials = 4, .D_max = 2});
  // Starts avoid the axes, but every orbit lies on a parabola y = c x^2.
  ASSERT_TRUE(r.g);
  EXPECT_TRUE(is_invariant_function(f, *r.g));
}
