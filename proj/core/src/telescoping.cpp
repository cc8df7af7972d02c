#include "dfred/telescoping.hpp"

namespace dfred {

namespace {

XPoly map_poly(const XPoly& p, const Rational& by) {
  std::vector<Coeff> c;
  for (int k = 0; k <= p.degree(); ++k) c.push_back(shift_param(p.coeff(k), by));
  return XPoly(std::move(c));
}

XRat shift_xrat(const XRat& r) { return XRat(map_poly(r.num(), Rational(1)), map_poly(r.den(), Rational(1))); }

XPoly derive_poly(const XPoly& p) {
  std::vector<Coeff> c;
  for (int k = 0; k <= p.degree(); ++k) c.push_back(derive_param(p.coeff(k)));
  return XPoly(std::move(c));
}

XRat derive_xrat(const XRat& r) {
  const XPoly& a = r.num();
  const XPoly& b = r.den();
  return XRat(derive_poly(a) * b - a * derive_poly(b), b * b);
}

// Scale making c primitive integer polynomials in the parameter with positive
// leading coefficient.
Coeff normalizer(const std::vector<Coeff>& c) {
  ParamPoly den(Rational(1));
  for (const auto& ci : c) den = lcm(den, ci.den());
  ParamPoly g;
  for (const auto& ci : c) g = gcd(g, (ci * Coeff(den)).num());
  Coeff scale = Coeff(den) / Coeff(g);
  Integer l = 1, content = 0;
  for (const auto& ci : c) {
    const ParamPoly p = (ci * scale).num();
    for (int k = 0; k <= p.degree(); ++k) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.coeff(k).get_den_mpz_t());
  }
  scale *= Coeff(Rational(l));
  for (const auto& ci : c) {
    const ParamPoly p = (ci * scale).num();
    for (int k = 0; k <= p.degree(); ++k) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), p.coeff(k).get_num_mpz_t());
  }
  scale /= Coeff(Rational(content));
  if ((c.back() * scale).num().lc() < 0) scale = -scale;
  return scale;
}

// (R/d, Q2) as one coordinate vector with denominator d.
Vec<Coeff> remainder_vector(const AdditiveDecomposition& h, const XPoly& d, const CandidateSpaces& spaces) {
  Vec<Coeff> out;
  const XPoly scale = exact_div(d, h.d);
  const int m = d.degree();
  for (const auto& ri : h.r) {
    XPoly p = ri * scale;
    for (int k = 0; k < m; ++k) out.push_back(p.coeff(k));
  }
  for (std::size_t k = 0; k < spaces.k_dim(); ++k) out.push_back(h.q2[k]);
  return out;
}

}  // namespace

DFiniteIdeal make_ideal(const AmbientPtr& ambient, PartialKind kind, const OreOperator& ut) {
  DFiniteIdeal out;
  out.ambient = ambient;
  out.kind = kind;
  out.ut = ambient->as_operator(ambient->reduce(ut));
  return out;
}

RVec partial_t_action(const RVec& f, const DFiniteIdeal& ideal) {
  const Ambient& amb = *ideal.ambient;
  const OreOperator p = amb.as_operator(f);
  if (ideal.kind == PartialKind::kDerivation) return amb.reduce(p.map_coeffs(derive_xrat) + p * ideal.ut);
  return amb.reduce(p.map_coeffs(shift_xrat) * ideal.ut);
}

bool commutes_on(const DFiniteIdeal& ideal, const std::vector<RVec>& samples) {
  const Ambient& amb = *ideal.ambient;
  for (const auto& f : samples)
    if (amb.derivative(partial_t_action(f, ideal)) != partial_t_action(amb.derivative(f), ideal)) return false;
  return true;
}

int default_max_order(const Decomposer& dec, const AdditiveDecomposition& f) {
  const auto& s = dec.spaces();
  const int n = dec.bases().w->size();
  return n * std::max(0, f.d.degree()) + static_cast<int>(s.k_dim() - s.intersection_basis().size());
}

TelescoperSearch telescoper(const RVec& f, const DFiniteIdeal& ideal, const Decomposer& dec, int max_order) {
  const BasisFrame& w = *dec.bases().w;
  TelescoperSearch out;
  std::vector<AdditiveDecomposition> hs;
  RVec cur = f;
  for (int r = 0;; ++r) {
    if (r > 0) cur = w.from_standard(partial_t_action(w.to_standard(cur), ideal));
    hs.push_back(dec.decompose(cur));
    if (r == 0) out.max_order = max_order < 0 ? default_max_order(dec, hs[0]) : max_order;

    XPoly d(Coeff(1));
    for (const auto& h : hs) d = lcm(d, h.d);
    // columns are the remainder vectors of partial^0 f .. partial^r f
    Matrix<Coeff> cols;
    for (const auto& h : hs) cols.push_back(remainder_vector(h, d, dec.spaces()));
    std::vector<Vec<Coeff>> ker;
    if (cols.front().empty()) {
      ker.push_back(Vec<Coeff>{Coeff(1)});
    } else {
      ker = kernel_basis(transpose(cols), hs.size());
    }
    if (!ker.empty()) {
      Vec<Coeff> c = ker.front();
      if (c.back().is_zero()) fail(ErrorCode::kInternal, "remainders of lower order became dependent");
      const Coeff scale = normalizer(c);
      for (auto& ci : c) ci *= scale;
      TelescoperResult res;
      res.telescoper.kind = ideal.kind;
      res.telescoper.coeffs = c;
      res.certificate = RVec(f.size(), XRat(0));
      for (std::size_t i = 0; i < hs.size(); ++i) res.certificate = res.certificate + scaled(hs[i].g, XRat(c[i]));
      res.decompositions = hs;
      if (!verify_telescoper(res, f, ideal, dec)) fail(ErrorCode::kInternal, "telescoper failed verification");
      out.result = std::move(res);
      return out;
    }
    if (r >= out.max_order) return out;
  }
}

bool verify_telescoper(const TelescoperResult& result, const RVec& f, const DFiniteIdeal& ideal, const Decomposer& dec) {
  const BasisFrame& w = *dec.bases().w;
  RVec sum(f.size(), XRat(0));
  RVec cur = f;
  for (std::size_t i = 0; i < result.telescoper.coeffs.size(); ++i) {
    if (i > 0) cur = w.from_standard(partial_t_action(w.to_standard(cur), ideal));
    sum = sum + scaled(cur, XRat(result.telescoper.coeffs[i]));
  }
  return sum == w.derivative(result.certificate);
}

}  // namespace dfred
