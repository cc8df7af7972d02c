#include "dfred/integral_basis.hpp"

#include <string>

namespace dfred {

namespace {

XRat x_power(int k) {
  if (k >= 0) return XRat(XPoly::monomial(Coeff(1), k));
  return XRat(XPoly(Coeff(1)), XPoly::monomial(Coeff(1), -k));
}

int ceil_int(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<int>(r.get_si());
}

int floor_int(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<int>(r.get_si());
}

// Replace elements by (sum c_i b_i) * factor while some constant combination
// has val >= 1 at the place.
void enlarge(RMatrix& elements, const LocalAnalyzer& analyzer, const Place& place, const XRat& factor, int max_enlarge) {
  const std::size_t n = elements.size();
  for (int iter = 0;; ++iter) {
    Matrix<Coeff> rows = analyzer.low_term_conditions(elements, place, Rational(1));
    auto ker = kernel_basis(rows, n);
    if (ker.empty()) return;
    if (iter >= max_enlarge)
      fail(ErrorCode::kTerminationBound, "integral basis enlargement exceeded " + std::to_string(max_enlarge) +
                                             " iterations at " + to_string(place, analyzer.ambient().field()));
    const Vec<Coeff>& c = ker.front();
    std::size_t j = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!c[i].is_zero()) j = i;
    RVec combo(elements[0].size(), XRat(0));
    for (std::size_t i = 0; i < n; ++i)
      if (!c[i].is_zero()) combo = combo + scaled(elements[i], XRat(c[i]));
    elements[j] = scaled(combo, factor);
  }
}

// Matrix A with W = A*V.
RMatrix transition(const BasisFrame& w, const BasisFrame& v) { return w.elements() * v.inverse_elements(); }

}  // namespace

FramePtr global_integral_basis(const LocalAnalyzer& analyzer, int max_enlarge) {
  const Ambient& amb = analyzer.ambient();
  const int n = amb.order();
  auto places = analyzer.singular_places();
  RMatrix elements;
  for (int i = 0; i < n; ++i) {
    XRat scale(1);
    for (const auto& p : places) {
      auto v = analyzer.val(amb.unit(i), p);
      if (!v) continue;
      const int k = ceil_int(-*v);
      if (k == 0) continue;
      const XRat lin(x_var() - XPoly(p.alpha));
      XRat pw(1);
      for (int j = 0; j < std::abs(k); ++j) pw *= lin;
      scale *= k > 0 ? pw : XRat(1) / pw;
    }
    elements.push_back(scaled(amb.unit(i), scale));
  }
  for (const auto& p : places) {
    const XRat inv_lin = XRat(1) / XRat(x_var() - XPoly(p.alpha));
    enlarge(elements, analyzer, p, inv_lin, max_enlarge);
  }
  return frame_matrix(std::make_shared<Ambient>(amb), elements, FrameKind::kGlobalIntegral, "w");
}

FramePtr local_integral_basis_at_infinity(const LocalAnalyzer& analyzer, int max_enlarge) {
  const Ambient& amb = analyzer.ambient();
  const int n = amb.order();
  const Place inf = Place::infinity();
  RMatrix elements;
  for (int i = 0; i < n; ++i) {
    auto v = analyzer.val(amb.unit(i), inf);
    const int k = v ? floor_int(*v) : 0;
    elements.push_back(scaled(amb.unit(i), x_power(k)));
  }
  enlarge(elements, analyzer, inf, XRat(x_var()), max_enlarge);
  return frame_matrix(std::make_shared<Ambient>(amb), elements, FrameKind::kLocalAtInfinity, "v");
}

std::pair<FramePtr, NormalizationData> normalize_at_infinity(const BasisFrame& w, const BasisFrame& v) {
  RMatrix elements = w.elements();
  const std::size_t n = elements.size();
  for (;;) {
    RMatrix a = elements * v.inverse_elements();
    std::vector<int> deg(n);
    Matrix<Coeff> lead = zero_matrix<Coeff>(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (auto d = a[i][j].degree(); d && (!any || *d > deg[i])) {
          deg[i] = *d;
          any = true;
        }
      }
      for (std::size_t j = 0; j < n; ++j)
        if (a[i][j].degree() == deg[i]) lead[i][j] = a[i][j].num().lc() / a[i][j].den().lc();
    }
    auto ker = kernel_basis(transpose(lead), n);
    if (ker.empty()) {
      NormalizationData data;
      for (int d : deg) data.tau.push_back(-d);
      return {frame_matrix(w.ambient_ptr(), elements, FrameKind::kNormalAtInfinity, w.symbol()), data};
    }
    const Vec<Coeff>& c = ker.front();
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!c[i].is_zero() && (k == n || deg[i] > deg[k])) k = i;
    RVec combo(elements[0].size(), XRat(0));
    for (std::size_t i = 0; i < n; ++i)
      if (!c[i].is_zero()) combo = combo + scaled(elements[i], XRat(c[i]) * x_power(deg[k] - deg[i]));
    elements[k] = combo;
  }
}

IntegralBasisResult basis_result(const FramePtr& w, const NormalizationData& normalization) {
  const std::size_t n = static_cast<std::size_t>(w->size());
  RMatrix velems;
  for (std::size_t i = 0; i < n; ++i) velems.push_back(scaled(w->elements()[i], x_power(normalization.tau[i])));
  FramePtr v = frame_matrix(w->ambient_ptr(), velems, FrameKind::kLocalAtInfinity, "v");

  IntegralBasisResult r;
  r.w = w;
  r.v = v;
  r.normalization = normalization;
  // smallest lambda >= 0 with x^lambda*e*V' polynomial over V
  const XRat e(w->e());
  int lambda = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      XRat t = XRat(v->m()[i][j]) / XRat(v->e()) * e;
      if (!t.is_zero()) lambda = std::max(lambda, -valuation_at(t, Coeff(0)));
    }
  r.lambda = lambda;
  r.a = XPoly::monomial(Coeff(1), lambda) * w->e();
  r.b = zero_matrix<XPoly>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      XRat t = XRat(v->m()[i][j]) / XRat(v->e()) * XRat(r.a);
      if (!t.is_polynomial()) fail(ErrorCode::kInternal, "x^lambda*e does not clear the denominators of V'");
      r.b[i][j] = t.num();
    }
  return r;
}

IntegralBasisResult compute_integral_bases(const LocalAnalyzer& analyzer, int max_enlarge) {
  FramePtr w = global_integral_basis(analyzer, max_enlarge);
  FramePtr v = local_integral_basis_at_infinity(analyzer, max_enlarge);
  auto [wn, data] = normalize_at_infinity(*w, *v);
  return basis_result(wn, data);
}

IntegralBasisResult integral_bases_from_frames(const FramePtr& w, const FramePtr& v) {
  auto [wn, data] = normalize_at_infinity(*w, *v);
  return basis_result(wn, data);
}

}  // namespace dfred
