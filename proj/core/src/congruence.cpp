#include "dfred/congruence.hpp"

#include <atomic>

namespace dfred {

namespace {

std::atomic<std::uint64_t> g_calls{0};
std::atomic<std::uint64_t> g_verified{0};
std::atomic<std::uint64_t> g_trivial_kernel{0};

std::size_t idx(std::size_t block, int m, int k) { return block * static_cast<std::size_t>(m) + static_cast<std::size_t>(k); }

bool regular_at(const XRat& f, const LocalModulus& m) {
  if (m.at_infinity) return f.is_zero() || f.den().degree() >= f.num().degree();
  return gcd(f.den(), m.v).degree() == 0;
}

}  // namespace

CongruenceStats congruence_stats() { return {g_calls.load(), g_verified.load(), g_trivial_kernel.load()}; }

void reset_congruence_stats() {
  g_calls = 0;
  g_verified = 0;
  g_trivial_kernel = 0;
}

std::vector<Coeff> expand_at_infinity(const XRat& f, int low, int high) {
  std::vector<Coeff> out(static_cast<std::size_t>(std::max(0, high - low)), Coeff(0));
  if (f.is_zero() || high <= low) return out;
  // f = z^val * N(z)/D(z) with N, D the reversed numerator and denominator.
  const int val = f.den().degree() - f.num().degree();
  const int need = high - val;
  if (need <= 0) return out;
  XPoly nrev = f.num().reversed(f.num().degree());
  XPoly drev = f.den().reversed(f.den().degree());
  XPoly zk = XPoly::monomial(Coeff(1), need);
  XPoly series = (nrev * inverse_mod(drev, zk)) % zk;
  for (int j = std::max(low, val); j < high; ++j) out[static_cast<std::size_t>(j - low)] = series.coeff(j - val);
  return out;
}

XPoly reduce_local(const XRat& f, const LocalModulus& m) {
  if (!regular_at(f, m)) fail(ErrorCode::kPrecondition, "reduce_local: element has a pole at the place");
  if (m.at_infinity) return XPoly(expand_at_infinity(f, 0, m.k));
  const XPoly mod = m.power();
  if (f.is_polynomial()) return f.num() % mod;
  return (f.num() * inverse_mod(f.den(), mod)) % mod;
}

CongruenceSolution congruence_solve(const RMatrix& a, const RVec& r, const LocalModulus& m) {
  ++g_calls;
  const std::size_t n = a.size();
  if (r.size() != n || m.k <= 0 || m.v.degree() <= 0) fail(ErrorCode::kPrecondition, "congruence_solve: bad arguments");
  const XPoly mod = m.power();
  const int deg = mod.degree();
  const std::size_t dim = n * static_cast<std::size_t>(deg);

  XMatrix ared(n, XVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ared[i][j] = reduce_local(a[i][j], m);
  XVec rred(n);
  for (std::size_t j = 0; j < n; ++j) rred[j] = reduce_local(r[j], m);

  // Column (i, k) holds the coefficients of y^k * A[i][*] mod the ideal.
  Matrix<Coeff> sys = zero_matrix<Coeff>(dim, dim);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < deg; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        XPoly entry = ared[i][j].shifted(k) % mod;
        for (int l = 0; l <= entry.degree(); ++l) sys[idx(j, deg, l)][idx(i, deg, k)] = entry.coeff(l);
      }
  Vec<Coeff> rhs(dim, Coeff(0));
  for (std::size_t j = 0; j < n; ++j)
    for (int l = 0; l <= rred[j].degree(); ++l) rhs[idx(j, deg, l)] = rred[j].coeff(l);

  LinearSolution<Coeff> sol;
  try {
    sol = linear_solve(sys, rhs, dim);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInconsistentSystem) fail(ErrorCode::kContractViolated, "congruence system has no solution");
    throw;
  }

  CongruenceSolution out;
  out.kernel_dim = sol.kernel.size();
  out.b.assign(n, XPoly());
  bool lifted = false;
  if (out.kernel_dim > 0) {
    if (auto inv = inverse(a)) {
      RVec t = r * *inv;
      bool regular = true;
      for (const auto& ti : t) regular = regular && regular_at(ti, m);
      if (regular) {
        for (std::size_t i = 0; i < n; ++i) out.b[i] = reduce_local(t[i], m);
        lifted = true;
      }
    }
    if (!lifted) fail(ErrorCode::kContractNonUnique, "congruence system has a nontrivial kernel");
  } else {
    ++g_trivial_kernel;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Coeff> cs(sol.particular.begin() + static_cast<std::ptrdiff_t>(idx(i, deg, 0)),
                            sol.particular.begin() + static_cast<std::ptrdiff_t>(idx(i + 1, deg, 0)));
      out.b[i] = XPoly(std::move(cs));
    }
  }

  XVec lhs = out.b * ared;
  for (std::size_t j = 0; j < n; ++j)
    if (!((lhs[j] - rred[j]) % mod).is_zero()) fail(ErrorCode::kInternal, "congruence solution failed substitution");
  ++g_verified;
  return out;
}

XVec congruence_solve(const XMatrix& a, const XVec& r, const XPoly& v, int lambda) {
  RMatrix ar(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& p : a[i]) ar[i].push_back(XRat(p));
  RVec rr;
  for (const auto& p : r) rr.push_back(XRat(p));
  return congruence_solve(ar, rr, LocalModulus::finite(v, lambda)).b;
}

}  // namespace dfred
