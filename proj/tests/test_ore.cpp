#include <gtest/gtest.h>

#include "dfred/expr.hpp"
#include "dfred/ore.hpp"

using namespace dfred;

namespace {

const CoeffField kQ = CoeffField::rationals();

AmbientPtr ambient(const std::string& l, const CoeffField& f = kQ) {
  return std::make_shared<Ambient>(parse_operator(l, f), f);
}

OreOperator op(const std::string& s, const CoeffField& f = kQ) { return parse_operator(s, f); }

RMatrix rows(const Ambient& a, const std::vector<std::string>& elems) {
  RMatrix m;
  auto std_frame = standard_frame(std::make_shared<Ambient>(a));
  for (const auto& e : elems) m.push_back(parse_element(e, *std_frame));
  return m;
}

XRat xr(const std::string& s) { return op(s).coeff(0); }

}  // namespace

TEST(OreMultiply, Commutation) {
  EXPECT_EQ(op("D") * op("x"), op("x*D + 1"));
  EXPECT_EQ(op("D*x - x*D"), op("1"));
}

TEST(OreMultiply, Identity) {
  OreOperator p = op("x^3*D^2 + (3*x^2+2)*D");
  EXPECT_EQ(op("1") * p, p);
}

TEST(OreMultiply, SecondOrderProductRule) {
  EXPECT_EQ(op("D^2") * op("x^2"), op("x^2*D^2 + 4*x*D + 2"));
}

TEST(OreMultiply, Associative) {
  OreOperator a = op("x*D + 1"), b = op("D^2 - x"), c = op("x^2*D + 3");
  EXPECT_EQ((a * b) * c, a * (b * c));
}

TEST(ReduceModL, Basics) {
  auto a = ambient("x^3*D^2 + (3*x^2+2)*D");
  EXPECT_TRUE(is_zero_vector(a->reduce(a->op())));
  RVec d2 = a->reduce(op("D^2"));
  EXPECT_EQ(d2[0], XRat(0));
  EXPECT_EQ(d2[1], -xr("(3*x^2+2)/x^3"));
  RVec d = a->reduce(op("D"));
  EXPECT_EQ(d[0], XRat(0));
  EXPECT_EQ(d[1], XRat(1));
}

TEST(ReduceModL, AgreesWithDerivative) {
  auto a = ambient("x^3*D^2 + (3*x^2+2)*D");
  OreOperator p = op("x^2*D^3 + 1/(x-1)*D + x");
  EXPECT_EQ(a->reduce(op("D") * p), a->derivative(a->reduce(p)));
  RVec once = a->reduce(p);
  EXPECT_EQ(a->reduce(a->as_operator(once)), once);
}

TEST(FrameMatrix, ZeroIrregular) {
  auto a = ambient("x^3*D^2 + (3*x^2+2)*D");
  auto w = frame_matrix(a, rows(*a, {"1", "x^3*D"}));
  EXPECT_EQ(w->e(), pow(x_var(), 3));
  EXPECT_EQ(w->m()[0][0], XPoly());
  EXPECT_EQ(w->m()[0][1], XPoly(Coeff(1)));
  EXPECT_EQ(w->m()[1][0], XPoly());
  EXPECT_EQ(w->m()[1][1], XPoly(coeff(-2)));
  // omega_2' = -2/x^3 omega_2
  RVec d = w->derivative(a->unit(1));
  EXPECT_EQ(d[0], XRat(0));
  EXPECT_EQ(d[1], xr("-2/x^3"));
}

TEST(FrameMatrix, InfinityIrregular) {
  auto a = ambient("x*D^2 - (3*x^3+2)*D");
  auto w = frame_matrix(a, rows(*a, {"1", "x^-2*D"}));
  EXPECT_EQ(w->e(), XPoly(Coeff(1)));
  XPoly x2 = x_var() * x_var();
  EXPECT_EQ(w->m()[0][1], x2);
  EXPECT_EQ(w->m()[1][1], x2.scaled(coeff(3)));
  EXPECT_EQ(w->m()[0][0], XPoly());
  EXPECT_EQ(w->m()[1][0], XPoly());
  RVec d = w->derivative(a->unit(0));
  EXPECT_EQ(d[1], XRat(x2));
}

TEST(FrameMatrix, StandardPolynomialMonic) {
  auto a = ambient("D^2 + x*D + x^2");
  auto w = frame_matrix(a, identity_matrix<XRat>(2));
  EXPECT_EQ(w->e(), XPoly(Coeff(1)));
}

TEST(FrameMatrix, DependentRowsFail) {
  auto a = ambient("D^2 + 1");
  try {
    frame_matrix(a, rows(*a, {"x*D", "x^2*D"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotABasis);
  }
}

TEST(FrameMatrix, IdentityHolds) {
  auto a = ambient("x*D^2 - (3*x^3+2)*D");
  auto w = frame_matrix(a, rows(*a, {"1 + x*D", "x^-2*D"}));
  // e W' = M W in standard coordinates
  for (int i = 0; i < 2; ++i) {
    RVec lhs = scaled(a->derivative(w->elements()[static_cast<std::size_t>(i)]), XRat(w->e()));
    RVec rhs = a->zero();
    for (int j = 0; j < 2; ++j)
      rhs = rhs + scaled(w->elements()[static_cast<std::size_t>(j)], XRat(w->m()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(ElementDerivative, LeibnizAndLinearity) {
  auto a = ambient("x^3*D^2 + (3*x^2+2)*D");
  auto w = frame_matrix(a, rows(*a, {"1", "x^3*D"}));
  RVec f = parse_element("x^2*w1 + 1/(x-1)*w2", *w);
  RVec g = parse_element("3*w1 - x*w2", *w);
  XRat r = xr("(x+2)/(x^2+1)");
  EXPECT_EQ(w->derivative(f + g), w->derivative(f) + w->derivative(g));
  EXPECT_EQ(w->derivative(scaled(f, r)), scaled(f, r.derivative()) + scaled(w->derivative(f), r));
  EXPECT_TRUE(is_zero_vector(w->derivative(a->zero())));
}

TEST(ChangeBasis, HyperexponentialAndRoundTrip) {
  CoeffField ft = CoeffField::with_param("t");
  auto a = ambient("D - (2*t^2*x - t^3 + 1)/(2*x - t)", ft);
  auto w = standard_frame(a);
  auto v = frame_matrix(a, RMatrix{{xr("1/x")}}, FrameKind::kLocalAtInfinity, "v");
  ModuleElement f{a->unit(0), w};
  ModuleElement fv = change_basis(f, v);
  EXPECT_EQ(fv.coords[0], XRat(x_var()));
  EXPECT_EQ(change_basis(fv, w).coords, f.coords);
}

TEST(ChangeBasis, RandomRoundTrip) {
  auto a = ambient("x*D^2 - (3*x^3+2)*D");
  auto w = frame_matrix(a, rows(*a, {"1", "x^-2*D"}));
  auto u = frame_matrix(a, rows(*a, {"x + D", "x^3*D - 1"}), FrameKind::kPlain, "v");
  RVec f = parse_element("(x^2 - 1)*w1 + 3/(x+2)*w2", *w);
  EXPECT_EQ(change_basis(change_basis(f, *w, *u), *u, *w), f);
}

TEST(Printing, OperatorAndElement) {
  OreOperator l = op("x^3*D^2 + (3*x^2+2)*D");
  EXPECT_EQ(to_string(l, kQ), "x^3*D^2 + (3*x^2 + 2)*D");
  EXPECT_EQ(parse_operator(to_string(l, kQ), kQ), l);
  auto a = ambient("x*D^2 - (3*x^3+2)*D");
  auto w = frame_matrix(a, rows(*a, {"1", "x^-2*D"}));
  RVec f = parse_element("(x - 4/9)*w2", *w);
  EXPECT_EQ(element_to_string(f, kQ, "w"), "(x - 4/9)*w2");
  RVec g = parse_element("-4/(3*x^2)*w1 - 2/(3*x^2)*w2", *w);
  std::string s = element_to_string(g, kQ, "w");
  EXPECT_EQ(parse_element(s, *w), g);
}

TEST(Parser, Errors) {
  try {
    op("x + * 2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
  try {
    op("y*D");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownSymbol);
  }
}

TEST(Parser, ParamOperatorRoundTrip) {
  CoeffField ft = CoeffField::with_param("t");
  ParamOperator p = parse_param_operator("2*t*Dt - 3*(t^3 - 2)", ft, PartialKind::kDerivation);
  EXPECT_EQ(to_string(p, ft), "2*t*Dt - 3*t^3 + 6");
  EXPECT_EQ(parse_param_operator(to_string(p, ft), ft, PartialKind::kDerivation), p);
  CoeffField fn = CoeffField::with_param("n");
  ParamOperator s = parse_param_operator("Sn*n", fn, PartialKind::kShift);
  EXPECT_EQ(to_string(s, fn), "n*Sn + Sn");
  ParamOperator d = parse_param_operator("Dt*t", ft, PartialKind::kDerivation);
  EXPECT_EQ(to_string(d, ft), "t*Dt + 1");
}
