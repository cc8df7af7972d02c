#include "dfred/decomposition.hpp"

#include <map>
#include <tuple>

namespace dfred {

namespace {

XRat x_power(int k) {
  if (k >= 0) return XRat(XPoly::monomial(Coeff(1), k));
  return XRat(XPoly(Coeff(1)), XPoly::monomial(Coeff(1), -k));
}

// Degree of the polynomial matrix, or nullopt when it is zero.
std::optional<int> matrix_degree(const XMatrix& m) {
  std::optional<int> d;
  for (const auto& row : m)
    for (const auto& p : row)
      if (!p.is_zero() && (!d || p.degree() > *d)) d = p.degree();
  return d;
}

// Laurent polynomial p = N / x^s as a map exponent -> coefficient, if it is one.
std::optional<std::map<int, Coeff>> laurent_terms(const XRat& p) {
  std::map<int, Coeff> out;
  if (p.is_zero()) return out;
  const XPoly& den = p.den();
  const int s = den.degree();
  if (den.low_degree() != s) return std::nullopt;
  const Coeff inv = Coeff(1) / den.lc();
  for (int k = 0; k <= p.num().degree(); ++k)
    if (!p.num().coeff(k).is_zero()) out[k - s] = p.num().coeff(k) * inv;
  return out;
}

RVec v_to_w(const RVec& c, const std::vector<int>& tau) {
  RVec out;
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(c[i] * x_power(tau[i]));
  return out;
}

}  // namespace

DecompositionBounds compute_bounds(const IntegralBasisResult& bases) {
  DecompositionBounds b;
  b.lambda = bases.lambda;
  b.e = bases.w->e();
  b.u = gcd(b.e, b.e.derivative());
  if (b.u.is_zero() || b.u.degree() < 0) b.u = XPoly(Coeff(1));
  b.tau = bases.normalization.tau;
  const int deg_e = b.e.degree();
  const auto deg_b = matrix_degree(bases.b);
  int min_neg_tau = 0;
  bool first = true;
  for (int t : b.tau) {
    if (first || -t < min_neg_tau) min_neg_tau = -t;
    first = false;
  }
  b.mu = std::min(min_neg_tau, 0);
  b.delta = std::max(b.lambda + deg_e, deg_b.value_or(b.lambda + deg_e)) - 1;
  const int nu0_u = b.u.low_degree();
  b.mu_prime = std::min(min_neg_tau, nu0_u);
  const int deg_u = b.u.degree();
  b.delta_prime = deg_b ? std::max(deg_u, *deg_b - b.lambda - deg_e + deg_u) : deg_u;
  return b;
}

SplitRemainder split_remainder(const FiniteRemainder& h) {
  SplitRemainder out;
  if (h.d.degree() <= 0) {
    const Coeff inv = Coeff(1) / h.d.lc();
    for (const auto& hi : h.h) {
      out.r.push_back(XPoly());
      out.s.push_back(hi * XPoly(inv));
    }
    return out;
  }
  auto eg = xgcd(h.e, h.d);
  if (eg.g.degree() != 0) fail(ErrorCode::kPrecondition, "split_remainder needs gcd(d, e) = 1");
  for (const auto& hi : h.h) {
    XPoly r = (hi * eg.s) % h.d;
    XPoly s = exact_div(hi - r * h.e, h.d);
    if (r * h.e + s * h.d != hi) fail(ErrorCode::kInternal, "split_remainder identity failed");
    out.r.push_back(r);
    out.s.push_back(s);
  }
  return out;
}

CandidateSpaces::CandidateSpaces(const IntegralBasisResult& bases, DecompositionBounds bounds)
    : v_(bases.v), bounds_(std::move(bounds)) {
  n_ = static_cast<std::size_t>(v_->size());
  k_dim_ = bounds_.delta >= bounds_.mu ? n_ * static_cast<std::size_t>(bounds_.delta - bounds_.mu + 1) : 0;
  u_dim_ = bounds_.delta_prime >= bounds_.mu_prime
               ? n_ * static_cast<std::size_t>(bounds_.delta_prime - bounds_.mu_prime + 1)
               : 0;
  if (k_dim_ == 0 || u_dim_ == 0) return;

  const XPoly xe = XPoly::monomial(Coeff(1), bounds_.lambda) * bounds_.e;
  // One row per U' generator: tail coordinates (outside K) and K-coordinates.
  std::vector<RVec> gens;
  for (std::size_t k = 0; k < u_dim_; ++k) gens.push_back(v_->derivative(u_element(k)));
  std::map<std::tuple<std::size_t, bool, int>, std::size_t> tail_cols;  // (i, from remainder, index)
  std::vector<std::map<std::size_t, Coeff>> tails(u_dim_);
  std::vector<Vec<Coeff>> kc(u_dim_, Vec<Coeff>(k_dim_, Coeff(0)));
  for (std::size_t i = 0; i < n_; ++i) {
    XPoly common(Coeff(1));
    for (const auto& g : gens) common = lcm(common, (g[i] * XRat(xe)).den());
    const int s = common.low_degree();
    const XPoly q_part = exact_div(common, XPoly::monomial(Coeff(1), s));
    for (std::size_t k = 0; k < u_dim_; ++k) {
      XRat p = gens[k][i] * XRat(xe);
      if (p.is_zero()) continue;
      XPoly num = p.num() * exact_div(common, p.den());
      auto [quo, rem] = divmod(num, q_part);
      auto col = [&](bool from_rem, int l) {
        auto [it, inserted] = tail_cols.try_emplace({i, from_rem, l}, tail_cols.size());
        return it->second;
      };
      for (int l = 0; l <= rem.degree(); ++l)
        if (!rem.coeff(l).is_zero()) tails[k][col(true, l)] += rem.coeff(l);
      for (int l = 0; l <= quo.degree(); ++l) {
        if (quo.coeff(l).is_zero()) continue;
        const int j = l - s;
        if (auto idx = k_index(j, i))
          kc[k][*idx] += quo.coeff(l);
        else
          tails[k][col(false, j)] += quo.coeff(l);
      }
    }
  }
  Matrix<Coeff> tail_t = zero_matrix<Coeff>(tail_cols.size(), u_dim_);
  for (std::size_t k = 0; k < u_dim_; ++k)
    for (const auto& [c, v] : tails[k]) tail_t[c][k] = v;
  std::vector<Vec<Coeff>> alphas;
  if (tail_cols.empty()) {
    for (std::size_t k = 0; k < u_dim_; ++k) {
      Vec<Coeff> a(u_dim_, Coeff(0));
      a[k] = Coeff(1);
      alphas.push_back(std::move(a));
    }
  } else {
    alphas = kernel_basis(tail_t, u_dim_);
  }
  std::vector<Vec<Coeff>> rows, pres;
  for (const auto& a : alphas) {
    Vec<Coeff> row(k_dim_, Coeff(0));
    for (std::size_t k = 0; k < u_dim_; ++k)
      if (!a[k].is_zero())
        for (std::size_t c = 0; c < k_dim_; ++c)
          if (!kc[k][c].is_zero()) row[c] += a[k] * kc[k][c];
    rows.push_back(std::move(row));
    pres.push_back(a);
  }
  // Reduced echelon form with pivots in term order.
  std::vector<bool> used(rows.size(), false);
  for (std::size_t col = 0; col < k_dim_; ++col) {
    std::size_t p = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!used[r] && !rows[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p == rows.size()) continue;
    used[p] = true;
    const Coeff inv = Coeff(1) / rows[p][col];
    rows[p] = scaled(rows[p], inv);
    pres[p] = scaled(pres[p], inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == p || rows[r][col].is_zero()) continue;
      const Coeff f = rows[r][col];
      rows[r] = rows[r] - scaled(rows[p], f);
      pres[r] = pres[r] - scaled(pres[p], f);
    }
    ku_.push_back(rows[p]);
    pre_.push_back(pres[p]);
    pivots_.push_back(col);
  }
  // keep the stored rows fully reduced against later pivots
  for (std::size_t a = 0; a < ku_.size(); ++a)
    for (std::size_t b = 0; b < ku_.size(); ++b) {
      if (a == b || ku_[a][pivots_[b]].is_zero()) continue;
      const Coeff f = ku_[a][pivots_[b]];
      ku_[a] = ku_[a] - scaled(ku_[b], f);
      pre_[a] = pre_[a] - scaled(pre_[b], f);
    }
}

std::pair<int, std::size_t> CandidateSpaces::k_term(std::size_t index) const {
  return {bounds_.delta - static_cast<int>(index / n_), index % n_};
}

std::optional<std::size_t> CandidateSpaces::k_index(int j, std::size_t i) const {
  if (j < bounds_.mu || j > bounds_.delta || i >= n_) return std::nullopt;
  return static_cast<std::size_t>(bounds_.delta - j) * n_ + i;
}

RVec CandidateSpaces::k_element(std::size_t index) const {
  auto [j, i] = k_term(index);
  RVec out(n_, XRat(0));
  out[i] = x_power(j) / XRat(XPoly::monomial(Coeff(1), bounds_.lambda) * bounds_.e);
  return out;
}

RVec CandidateSpaces::u_element(std::size_t index) const {
  const int j = bounds_.delta_prime - static_cast<int>(index / n_);
  RVec out(n_, XRat(0));
  out[index % n_] = x_power(j) / XRat(bounds_.u);
  return out;
}

RVec CandidateSpaces::k_combination(const Vec<Coeff>& c) const {
  RVec out(n_, XRat(0));
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) out = out + scaled(k_element(k), XRat(c[k]));
  return out;
}

RVec CandidateSpaces::u_combination(const Vec<Coeff>& c) const {
  RVec out(n_, XRat(0));
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) out = out + scaled(u_element(k), XRat(c[k]));
  return out;
}

std::optional<Vec<Coeff>> CandidateSpaces::to_k_coords(const RVec& v) const {
  Vec<Coeff> out(k_dim_, Coeff(0));
  const XRat xe(XPoly::monomial(Coeff(1), bounds_.lambda) * bounds_.e);
  for (std::size_t i = 0; i < n_; ++i) {
    auto terms = laurent_terms(v[i] * xe);
    if (!terms) return std::nullopt;
    for (const auto& [j, c] : *terms) {
      auto idx = k_index(j, i);
      if (!idx) return std::nullopt;
      out[*idx] = c;
    }
  }
  return out;
}

std::pair<Vec<Coeff>, Vec<Coeff>> CandidateSpaces::project(const Vec<Coeff>& q) const {
  Vec<Coeff> comp = q;
  Vec<Coeff> g(u_dim_, Coeff(0));
  for (std::size_t k = 0; k < ku_.size(); ++k) {
    const Coeff c = comp[pivots_[k]];
    if (c.is_zero()) continue;
    comp = comp - scaled(ku_[k], c);
    g = g + scaled(pre_[k], c);
  }
  return {comp, g};
}

Decomposer::Decomposer(IntegralBasisResult bases) : bases_(std::move(bases)), spaces_(bases_, compute_bounds(bases_)) {}

AdditiveDecomposition Decomposer::decompose(const RVec& f) const {
  const BasisFrame& w = *bases_.w;
  const BasisFrame& v = *bases_.v;
  const auto& tau = bases_.normalization.tau;
  const std::size_t n = static_cast<std::size_t>(w.size());

  FiniteRemainder fr = hermite_reduce_finite(f, w);
  SplitRemainder sp = split_remainder(fr);
  RVec sv;
  for (std::size_t i = 0; i < n; ++i) sv.push_back(XRat(sp.s[i]) / XRat(fr.e) * x_power(-tau[i]));
  InfinityRemainder ir = hermite_reduce_infinity(sv, v);
  auto kc = spaces_.to_k_coords(ir.h);
  if (!kc) fail(ErrorCode::kContractViolated, "remainder at infinity lies outside the candidate space K");
  auto [comp, g1] = spaces_.project(*kc);

  AdditiveDecomposition out;
  out.d = fr.d;
  out.r = sp.r;
  out.q2 = comp;
  out.q2_coords = spaces_.k_combination(comp);
  out.g = fr.g + v_to_w(ir.g + spaces_.u_combination(g1), tau);
  RVec rw;
  for (std::size_t i = 0; i < n; ++i) rw.push_back(XRat(sp.r[i]) / XRat(fr.d));
  out.remainder = rw + v_to_w(out.q2_coords, tau);
  out.integrable = is_zero_vector(out.remainder);
  if (w.derivative(out.g) + out.remainder != f) fail(ErrorCode::kInternal, "additive decomposition failed reconstruction");
  return out;
}

std::optional<RVec> Decomposer::integrate(const RVec& f) const {
  AdditiveDecomposition d = decompose(f);
  if (!d.integrable) return std::nullopt;
  return d.g;
}

}  // namespace dfred
