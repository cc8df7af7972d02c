#include <gtest/gtest.h>

#include "dfred/expr.hpp"
#include "dfred/hermite.hpp"

using namespace dfred;

namespace {

const CoeffField kQ = CoeffField::rationals();
const CoeffField kQt = CoeffField::with_param("t");

AmbientPtr ambient(const std::string& l, const CoeffField& f = kQ) {
  return std::make_shared<Ambient>(parse_operator(l, f), f);
}

FramePtr frame(const AmbientPtr& a, const std::vector<std::string>& elems, const std::string& sym = "w") {
  RMatrix m;
  auto std_frame = standard_frame(a);
  for (const auto& e : elems) m.push_back(parse_element(e, *std_frame));
  return frame_matrix(a, m, FrameKind::kPlain, sym);
}

XRat r(const std::string& s, const CoeffField& f = kQ) { return parse_operator(s, f).coeff(0); }
XPoly p(const std::string& s, const CoeffField& f = kQ) { return r(s, f).num(); }
RVec coords(const FramePtr& fr, const std::string& s) { return parse_element(s, *fr); }

FramePtr zero_irregular_frame() { return frame(ambient("x^3*D^2 + (3*x^2 + 2)*D"), {"1", "x^3*D"}); }
FramePtr infinity_irregular_frame() { return frame(ambient("x*D^2 - (3*x^3 + 2)*D"), {"1", "x^-2*D"}); }

}  // namespace

TEST(HermiteStep, ZeroIrregularSquarefree) {
  auto w = zero_irregular_frame();
  XVec a{p("-2*x^2 - x^4"), p("-2 + 3*x^2 - 3*x^4")};
  SquarefreeStep s = hermite_step_squarefree(XPoly(Coeff(1)), x_var(), 4, a, *w);
  EXPECT_EQ(s.b, (XVec{p("2/3*x^2"), p("4/3*x^2")}));
  // remainder ((-4 - 3x^2) w1 + (13 - 9x^2) w2) / (3x^2) = c / x^3
  EXPECT_EQ(s.c, (XVec{p("x*(-4 - 3*x^2)/3"), p("x*(13 - 9*x^2)/3")}));
}

TEST(HermiteStep, LambdaZeroFormula) {
  // -(w1/(x-1))' = w1/(x-1)^2 - w2/(x-1) for L = D^2, W = (1, D).
  auto w = frame(ambient("D^2"), {"1", "D"});
  SquarefreeStep s = hermite_step_squarefree(XPoly(Coeff(1)), p("x - 1"), 2, XVec{XPoly(Coeff(1)), XPoly()}, *w);
  EXPECT_EQ(s.b, (XVec{XPoly(Coeff(-1)), XPoly()}));
  EXPECT_EQ(s.c, (XVec{XPoly(), XPoly(Coeff(1))}));
}

TEST(HermiteStep, AlreadyReducedNumerator) {
  auto w = frame(ambient("D^2"), {"1", "D"});
  XVec a{p("x - 1"), p("(x - 1)^2")};
  SquarefreeStep s = hermite_step_squarefree(XPoly(Coeff(1)), p("x - 1"), 3, a, *w);
  EXPECT_EQ(s.b, (XVec{XPoly(), XPoly()}));
  EXPECT_EQ(s.c, (XVec{XPoly(Coeff(1)), p("x - 1")}));
}

TEST(HermiteStep, AtInfinityIrregular) {
  auto v = infinity_irregular_frame();
  LocalStep s = hermite_step_at_place(RVec{r("4"), r("x^-2")}, 3, *v, Place::infinity());
  EXPECT_EQ(s.b, (RVec{r("1"), r("4/(9*x^3) - 1/3")}));
  // remainder (x - 4/9) w2 = z^-(d-1) c
  EXPECT_EQ(s.c, (RVec{XRat(0), r("(x - 4/9)/x^2")}));
}

TEST(HermiteStep, ZeroInput) {
  auto v = infinity_irregular_frame();
  LocalStep s = hermite_step_at_place(RVec{XRat(0), XRat(0)}, 3, *v, Place::infinity());
  EXPECT_EQ(s.b, (RVec{XRat(0), XRat(0)}));
  EXPECT_EQ(s.c, (RVec{XRat(0), XRat(0)}));
}

TEST(HermiteStep, LocalFrameLambda) {
  EXPECT_EQ(local_frame_data(*zero_irregular_frame(), Place::finite(Coeff(0))).lambda, 3);
  EXPECT_EQ(local_frame_data(*infinity_irregular_frame(), Place::infinity()).lambda, 2);
}

TEST(PsiFrame, ZeroIrregular) {
  auto w = zero_irregular_frame();
  for (int d : {2, 4, 7}) {
    RMatrix psi = psi_frame(d, *w, Place::finite(Coeff(0)));
    const Coeff k(Rational(d - 1));
    RMatrix expected{{r("-x^2") * XRat(XPoly(k)), r("1")}, {XRat(0), r("-x^2") * XRat(XPoly(k)) - r("2")}};
    EXPECT_EQ(psi, expected) << "d = " << d;
  }
}

TEST(PsiFrame, SandwichZeroIrregular) {
  // (2 psi_1 + psi_2) / x^2 is integral at 0 although its coordinates are not.
  auto w = zero_irregular_frame();
  LocalAnalyzer an(w->ambient_ptr());
  RMatrix psi = psi_frame(4, *w, Place::finite(Coeff(0)));
  for (const auto& row : psi) EXPECT_TRUE(an.is_locally_integral(w->to_standard(row), Place::finite(Coeff(0))));
  RVec comb = scaled(scaled(psi[0], r("2")) + psi[1], r("x^-2"));
  EXPECT_TRUE(an.is_locally_integral(w->to_standard(comb), Place::finite(Coeff(0))));
}

TEST(HermiteReduce, AtInfinityIrregular) {
  auto v = infinity_irregular_frame();
  InfinityRemainder rem = hermite_reduce_infinity(coords(v, "4*x^3*w1 + x*w2"), *v);
  EXPECT_EQ(rem.degree_bound, 2);
  EXPECT_EQ(rem.h, (RVec{XRat(0), r("x - 4/9")}));
  EXPECT_EQ(rem.g, (RVec{r("x^4"), r("4/9*x - 1/3*x^4")}));
}

TEST(HermiteReduce, InfinityAlreadyReduced) {
  auto v = infinity_irregular_frame();
  RVec f = coords(v, "x*w1 + 3*w2");
  InfinityRemainder rem = hermite_reduce_infinity(f, *v);
  EXPECT_EQ(rem.h, f);
  EXPECT_EQ(rem.g, (RVec{XRat(0), XRat(0)}));
}

TEST(HermiteReduce, AtInfinityHyperexponential) {
  auto a = ambient("D - (2*t^2*x - t^3 + 1)/(2*x - t)", kQt);
  auto v = frame(a, {"x^-1"}, "v");
  InfinityRemainder rem = hermite_reduce_infinity(RVec{r("x", kQt)}, *v);
  // Differentiating g*v by hand forces the constant term -1/(2*t^4).
  EXPECT_EQ(rem.g, (RVec{r("x/t^2 - 1/(2*t^4)", kQt)}));
  EXPECT_EQ(rem.h, (RVec{r("-((t^3 + 1)*x - t)/(2*t^4*x*(2*x - t))", kQt)}));
}

TEST(HermiteReduce, FiniteZeroIrregular) {
  auto w = zero_irregular_frame();
  RVec f = coords(w, "((-2*x^2 - x^4)*w1 + (-2 + 3*x^2 - 3*x^4)*w2)/x^4");
  FiniteRemainder rem = hermite_reduce_finite(f, *w);
  EXPECT_EQ(w->derivative(rem.g) + rem.remainder(), f);
  EXPECT_EQ(rem.d, XPoly(Coeff(1)));
  EXPECT_EQ(rem.e, p("x^3"));
  // one step suffices: this remainder already has denominator x^2 | e
  EXPECT_EQ(rem.g, coords(w, "(2*w1 + 4*w2)/(3*x)"));
}

TEST(HermiteReduce, FiniteExactDerivative) {
  auto w = zero_irregular_frame();
  RVec g = coords(w, "(-2*w1 - w2)/(4*x^2)");
  RVec f = w->derivative(g);
  EXPECT_EQ(f, coords(w, "(2*w1 + w2)/(2*x^3)"));
  FiniteRemainder rem = hermite_reduce_finite(f, *w);
  EXPECT_EQ(rem.g, (RVec{XRat(0), XRat(0)}));
  EXPECT_EQ(rem.remainder(), f);
}

TEST(HermiteReduce, FiniteMixedFactors) {
  auto w = zero_irregular_frame();
  RVec f = coords(w, "w1/((x - 1)^3*x^5) + w2/(x + 2)^2");
  FiniteRemainder rem = hermite_reduce_finite(f, *w);
  EXPECT_EQ(w->derivative(rem.g) + rem.remainder(), f);
  EXPECT_EQ(gcd(rem.d, rem.e).degree(), 0);
  EXPECT_EQ(gcd(rem.d, rem.d.derivative()).degree(), 0);
  for (const auto& gi : rem.g)
    if (!gi.is_zero()) EXPECT_LT(gi.num().degree(), gi.den().degree());
}

TEST(HermiteReduce, FinitePolynomialInput) {
  auto w = zero_irregular_frame();
  RVec f = coords(w, "x^2*w1 + w2");
  FiniteRemainder rem = hermite_reduce_finite(f, *w);
  EXPECT_EQ(rem.g, (RVec{XRat(0), XRat(0)}));
  EXPECT_EQ(rem.d, XPoly(Coeff(1)));
  EXPECT_EQ(rem.remainder(), f);
}
