#include "dfred/hermite.hpp"

#include <climits>

namespace dfred {

namespace {

XRat z_power(const Place& place, int k) {
  const XRat z = place.local_parameter();
  XRat r(1);
  const XRat base = k >= 0 ? z : XRat(1) / z;
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return r;
}

int nu(const XRat& f, const Place& place) {
  return place.at_infinity() ? valuation_at_infinity(f) : valuation_at(f, place.alpha);
}

LocalModulus modulus_at(const Place& place, int k) {
  if (place.at_infinity()) return LocalModulus::infinity(k);
  return LocalModulus::finite(x_var() - XPoly(place.alpha), k);
}

// Residue modulo z^k back to a rational function of x.
XRat residue_to_xrat(const XPoly& r, const Place& place) {
  if (!place.at_infinity()) return XRat(r);
  XRat out(0);
  for (int j = 0; j <= r.degree(); ++j)
    if (!r.coeff(j).is_zero()) out += XRat(XPoly(r.coeff(j))) * z_power(place, j);
  return out;
}

RVec to_rvec(const XVec& v) {
  RVec out;
  for (const auto& p : v) out.push_back(XRat(p));
  return out;
}

XVec to_poly_vec(const RVec& v, const char* what) {
  XVec out;
  for (const auto& r : v) {
    if (!r.is_polynomial()) fail(ErrorCode::kContractViolated, what);
    out.push_back(r.num());
  }
  return out;
}

XPoly common_denominator(const RVec& v) {
  XPoly d(Coeff(1));
  for (const auto& r : v) d = lcm(d, r.den());
  return d;
}

int max_degree(const RVec& v) {
  int d = INT_MIN;
  for (const auto& r : v)
    if (auto k = r.degree()) d = std::max(d, *k);
  return d;
}

}  // namespace

LocalFrameData local_frame_data(const BasisFrame& frame, const Place& place) {
  const std::size_t n = static_cast<std::size_t>(frame.size());
  const XRat e(frame.e());
  RMatrix t(n, RVec(n));
  LocalFrameData out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      t[i][j] = XRat(frame.m()[i][j]) / e;
      if (!t[i][j].is_zero()) {
        const int l = -nu(t[i][j], place);
        if (!out.lambda || l > *out.lambda) out.lambda = l;
      }
    }
  const XRat zl = out.lambda ? z_power(place, *out.lambda) : XRat(1);
  out.m = t;
  for (auto& row : out.m)
    for (auto& x : row) x *= zl;
  return out;
}

SquarefreeStep hermite_step_squarefree(const XPoly& u, const XPoly& v, int d, const XVec& a, const BasisFrame& frame) {
  const std::size_t n = static_cast<std::size_t>(frame.size());
  const XPoly& e = frame.e();
  const int lambda = multiplicity(e, v);
  if (v.degree() <= 0 || gcd(v, v.derivative()).degree() > 0) fail(ErrorCode::kPrecondition, "v must be squarefree and nonconstant");
  if (gcd(u, v).degree() > 0) fail(ErrorCode::kPrecondition, "gcd(u, v) must be 1");
  if (gcd(exact_div(e, pow(v, lambda)), v).degree() > 0) fail(ErrorCode::kPrecondition, "v must divide e uniformly");
  if (d <= std::max(1, lambda)) fail(ErrorCode::kPrecondition, "pole order too small for a Hermite step");

  SquarefreeStep out;
  const XPoly dv = v.derivative();
  if (lambda == 0) {
    const XPoly inv = inverse_mod((u * dv) % v, v);
    const Coeff s = Coeff(Rational(-1, d - 1));
    for (const auto& ai : a) out.b.push_back(((ai * inv) % v) * XPoly(s));
  } else {
    RMatrix mat(n, RVec(n));
    const XRat scale = XRat(u * pow(v, lambda)) / XRat(e);
    const XRat diag = XRat(u * pow(v, lambda - 1) * dv) * XRat(XPoly(Coeff(Rational(d - 1))));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mat[i][j] = scale * XRat(frame.m()[i][j]);
        if (i == j) mat[i][j] -= diag;
      }
    RVec r;
    for (const auto& ai : a) r.push_back(XRat(ai * pow(v, lambda - 1)));
    CongruenceSolution sol = congruence_solve(mat, r, LocalModulus::finite(v, lambda));
    out.b = sol.b;
    out.kernel_dim = sol.kernel_dim;
  }
  // c = (f - g') u v^(d-1)
  const XRat vd1(pow(v, d - 1));
  RVec f = scaled(to_rvec(a), XRat(1) / XRat(u * pow(v, d)));
  RVec g = scaled(to_rvec(out.b), XRat(1) / vd1);
  RVec c = scaled(f - frame.derivative(g), XRat(u) * vd1);
  out.c = to_poly_vec(c, "Hermite step left a non-polynomial remainder");
  return out;
}

LocalStep hermite_step_at_place(const RVec& a, int d, const BasisFrame& frame, const Place& place) {
  const int mu = place.mu_z();
  if (place.at_infinity() ? d < 0 : d <= 1) fail(ErrorCode::kPrecondition, "pole order outside the admissible range");
  for (const auto& ai : a)
    if (!ai.is_zero() && nu(ai, place) < 0) fail(ErrorCode::kPrecondition, "coefficients must be regular at the place");
  const std::size_t n = static_cast<std::size_t>(frame.size());
  const LocalFrameData fd = local_frame_data(frame, place);
  const Coeff md(Rational(mu * (d + mu)));
  LocalStep out;
  if (!fd.lambda || *fd.lambda < -mu) {
    for (const auto& ai : a) {
      XPoly r = ai.is_zero() ? XPoly() : reduce_local(ai, modulus_at(place, 1));
      out.b.push_back(XRat(XPoly(r.coeff(0) / md)));
    }
  } else {
    const int k = *fd.lambda + mu;
    const XRat zk = z_power(place, k);
    RMatrix mat = fd.m;
    for (std::size_t i = 0; i < n; ++i) mat[i][i] += zk * XRat(XPoly(md));
    RVec r = scaled(a, zk);
    CongruenceSolution sol = congruence_solve(mat, r, modulus_at(place, k + 1));
    out.kernel_dim = sol.kernel_dim;
    for (const auto& bi : sol.b) out.b.push_back(residue_to_xrat(bi, place));
  }
  RVec f = scaled(a, z_power(place, -d));
  RVec g = scaled(out.b, z_power(place, -(d + mu)));
  out.c = scaled(f - frame.derivative(g), z_power(place, d - 1));
  for (const auto& ci : out.c)
    if (!ci.is_zero() && nu(ci, place) < 0) fail(ErrorCode::kContractViolated, "Hermite step at a place left a pole");
  return out;
}

RMatrix psi_frame(int d, const BasisFrame& frame, const Place& place) {
  const int mu = place.mu_z();
  const LocalFrameData fd = local_frame_data(frame, place);
  const int lambda = fd.lambda.value_or(-mu);
  if (lambda < -mu) fail(ErrorCode::kPrecondition, "psi frame needs lambda >= -mu");
  RMatrix out = fd.m;
  const XRat extra = z_power(place, lambda + mu) * XRat(XPoly(Coeff(Rational(mu * (d + mu)))));
  for (std::size_t i = 0; i < out.size(); ++i) out[i][i] += extra;
  return out;
}

RVec FiniteRemainder::remainder() const {
  const XRat de(d * e);
  RVec out;
  for (const auto& hi : h) out.push_back(XRat(hi) / de);
  return out;
}

FiniteRemainder hermite_reduce_finite(const RVec& f, const BasisFrame& frame) {
  const std::size_t n = static_cast<std::size_t>(frame.size());
  const XPoly& e = frame.e();
  const auto e_factors = squarefree_factorize(e);
  RVec cur = f;
  RVec g(n, XRat(0));
  for (;;) {
    const XPoly den = lcm(common_denominator(cur), e);
    // Split each squarefree factor of den by its multiplicity in e.
    struct Candidate {
      XPoly v;
      int d;
    };
    std::optional<Candidate> best;
    for (const auto& sf : squarefree_factorize(den)) {
      XPoly rest = sf.factor;
      std::vector<std::pair<XPoly, int>> pieces;
      for (const auto& ef : e_factors) {
        XPoly p = gcd(rest, ef.factor);
        if (p.degree() > 0) {
          pieces.push_back({p, ef.multiplicity});
          rest = exact_div(rest, p);
        }
      }
      if (rest.degree() > 0) pieces.push_back({rest, 0});
      for (const auto& [v, lambda] : pieces)
        if (sf.multiplicity > std::max(1, lambda) && (!best || sf.multiplicity > best->d)) best = Candidate{v, sf.multiplicity};
    }
    if (!best) break;
    const XPoly u = exact_div(den, pow(best->v, best->d));
    XVec a = to_poly_vec(scaled(cur, XRat(den)), "internal: common denominator");
    SquarefreeStep step = hermite_step_squarefree(u, best->v, best->d, a, frame);
    g = g + scaled(to_rvec(step.b), XRat(XPoly(Coeff(1)), pow(best->v, best->d - 1)));
    cur = scaled(to_rvec(step.c), XRat(XPoly(Coeff(1)), u * pow(best->v, best->d - 1)));
  }
  if (frame.derivative(g) + cur != f) fail(ErrorCode::kInternal, "finite Hermite reduction failed reconstruction");
  FiniteRemainder out;
  out.g = g;
  out.e = e;
  const XPoly den = lcm(common_denominator(cur), e);
  out.d = exact_div(den, e);
  out.h = to_poly_vec(scaled(cur, XRat(den)), "internal: remainder denominator");
  if (gcd(out.d, e).degree() > 0 || gcd(out.d, out.d.derivative()).degree() > 0)
    fail(ErrorCode::kInternal, "finite remainder denominator is not squarefree and coprime to e");
  return out;
}

InfinityRemainder hermite_reduce_infinity(const RVec& f, const BasisFrame& frame) {
  const Place inf = Place::infinity();
  const LocalFrameData fd = local_frame_data(frame, inf);
  InfinityRemainder out;
  out.degree_bound = std::max(0, fd.lambda.value_or(0));
  const std::size_t n = static_cast<std::size_t>(frame.size());
  RVec cur = f;
  out.g.assign(n, XRat(0));
  for (;;) {
    const int d = max_degree(cur);
    if (d == INT_MIN || d < out.degree_bound) break;
    RVec a = scaled(cur, z_power(inf, d));
    LocalStep step = hermite_step_at_place(a, d, frame, inf);
    RVec g = scaled(step.b, z_power(inf, -(d + 1)));
    out.g = out.g + g;
    cur = cur - frame.derivative(g);
    if (max_degree(cur) >= d) fail(ErrorCode::kContractViolated, "Hermite step at infinity did not lower the degree");
  }
  out.h = cur;
  if (frame.derivative(out.g) + out.h != f) fail(ErrorCode::kInternal, "Hermite reduction at infinity failed reconstruction");
  return out;
}

}  // namespace dfred
