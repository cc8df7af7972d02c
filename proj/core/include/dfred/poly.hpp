#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "dfred/error.hpp"
#include "dfred/rational.hpp"

namespace dfred {

namespace detail {
// Unqualified so ADL finds is_zero for coefficient types declared later.
template <class T>
bool coeff_is_zero(const T& c) {
  return is_zero(c);
}
}  // namespace detail

// Dense univariate polynomial over a field F. Coefficients are stored from
// degree 0 upward with no trailing zeros; the zero polynomial is empty and
// has degree -1.
template <class F>
class Poly {
 public:
  using Field = F;

  Poly() = default;
  Poly(const F& c) {  // NOLINT: constants convert implicitly
    if (!detail::coeff_is_zero(c)) coeffs_.push_back(c);
  }
  Poly(int c) : Poly(F(c)) {}  // NOLINT
  explicit Poly(std::vector<F> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly monomial(const F& c, int degree) {
    if (detail::coeff_is_zero(c)) return Poly();
    std::vector<F> v(static_cast<std::size_t>(degree) + 1, F(0));
    v.back() = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(F(1), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<F>& coeffs() const { return coeffs_; }

  F coeff(int i) const {
    if (i < 0 || i > degree()) return F(0);
    return coeffs_[static_cast<std::size_t>(i)];
  }
  const F& lc() const {
    if (coeffs_.empty()) fail(ErrorCode::kZeroInput, "leading coefficient of zero polynomial");
    return coeffs_.back();
  }
  // Lowest exponent with a nonzero coefficient; -1 for zero.
  int low_degree() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!detail::coeff_is_zero(coeffs_[i])) return static_cast<int>(i);
    return -1;
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), F(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), F(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> r(a.coeffs_.size() + b.coeffs_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (detail::coeff_is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        F t = a.coeffs_[i] * b.coeffs_[j];
        r[i + j] += t;
      }
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const F& c) const {
    if (detail::coeff_is_zero(c)) return Poly();
    Poly r = *this;
    for (auto& a : r.coeffs_) a *= c;
    return r;
  }
  Poly shifted(int k) const {  // multiply by x^k, k >= 0
    if (is_zero() || k == 0) return *this;
    std::vector<F> v(static_cast<std::size_t>(k), F(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Poly(std::move(v));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    F inv = F(1) / lc();
    return scaled(inv);
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<F> r(coeffs_.size() - 1, F(0));
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * F(static_cast<int>(i));
    return Poly(std::move(r));
  }

  F evaluate(const F& at) const {
    F acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      acc *= at;
      acc += coeffs_[i];
    }
    return acc;
  }

  // p(x + a)
  Poly taylor_shift(const F& a) const {
    std::vector<F> c = coeffs_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) {
        F t = c[j] * a;
        c[j - 1] += t;
      }
    return Poly(std::move(c));
  }

  // x^deg * p(1/x) for the given deg >= degree()
  Poly reversed(int deg) const {
    std::vector<F> r(static_cast<std::size_t>(deg) + 1, F(0));
    for (int i = 0; i <= degree(); ++i) r[static_cast<std::size_t>(deg - i)] = coeffs_[static_cast<std::size_t>(i)];
    return Poly(std::move(r));
  }

  // Keep only terms of degree < k.
  Poly truncated(int k) const {
    if (k <= 0) return Poly();
    if (k > degree()) return *this;
    return Poly(std::vector<F>(coeffs_.begin(), coeffs_.begin() + k));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    while (!coeffs_.empty() && detail::coeff_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<F> coeffs_;
};

template <class F>
bool is_zero(const Poly<F>& p) {
  return p.is_zero();
}

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) fail(ErrorCode::kZeroInput, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<F>(), a};
  std::vector<F> r = a.coeffs();
  const int db = b.degree();
  std::vector<F> q(static_cast<std::size_t>(a.degree() - db) + 1, F(0));
  const F inv = F(1) / b.lc();
  for (int i = a.degree(); i >= db; --i) {
    const F& top = r[static_cast<std::size_t>(i)];
    if (detail::coeff_is_zero(top)) continue;
    F c = top * inv;
    for (int j = 0; j <= db; ++j) {
      F t = c * b.coeffs()[static_cast<std::size_t>(j)];
      r[static_cast<std::size_t>(i - db + j)] -= t;
    }
    q[static_cast<std::size_t>(i - db)] = c;
  }
  return {Poly<F>(std::move(q)), Poly<F>(std::move(r))};
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).second;
}

// Exact quotient; fails when b does not divide a.
template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) fail(ErrorCode::kInternal, "inexact polynomial division");
  return q;
}

template <class F>
Poly<F> pow(const Poly<F>& p, int k) {
  Poly<F> r(F(1)), base = p;
  while (k > 0) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Over Q: primitive remainder sequence on integer polynomials.
Poly<Rational> gcd(Poly<Rational> a, Poly<Rational> b);

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>();
  return exact_div(a * b, gcd(a, b)).monic();
}

template <class F>
struct XgcdResult {
  Poly<F> g, s, t;
};

// g = s*p + t*q with g monic.
template <class F>
XgcdResult<F> xgcd(const Poly<F>& p, const Poly<F>& q) {
  if (p.is_zero() && q.is_zero()) fail(ErrorCode::kXgcdOfZeros, "xgcd of zeros");
  Poly<F> r0 = p, r1 = q;
  Poly<F> s0(F(1)), s1, t0, t1(F(1));
  while (!r1.is_zero()) {
    auto [quo, rem] = divmod(r0, r1);
    Poly<F> s2 = s0 - quo * s1;
    Poly<F> t2 = t0 - quo * t1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const F inv = F(1) / r0.lc();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
template <class F>
Poly<F> inverse_mod(const Poly<F>& a, const Poly<F>& m) {
  auto res = xgcd(a % m, m);
  if (res.g.degree() != 0) fail(ErrorCode::kPrecondition, "polynomial not invertible modulo m");
  return res.s % m;
}

template <class F>
struct SquarefreeFactor {
  Poly<F> factor;
  int multiplicity;
};

// Yun's algorithm. Factors are monic, pairwise coprime, squarefree, and
// listed by strictly increasing multiplicity.
template <class F>
std::vector<SquarefreeFactor<F>> squarefree_factorize(const Poly<F>& p) {
  if (p.is_zero()) fail(ErrorCode::kZeroInput, "squarefree factorization of zero");
  std::vector<SquarefreeFactor<F>> out;
  if (p.degree() == 0) return out;
  Poly<F> a = p.monic();
  Poly<F> da = a.derivative();
  Poly<F> b = gcd(a, da);
  Poly<F> c = exact_div(a, b);
  Poly<F> d = exact_div(da, b) - c.derivative();
  for (int i = 1; c.degree() > 0; ++i) {
    Poly<F> g = gcd(c, d);
    if (g.degree() > 0) out.push_back({g, i});
    Poly<F> c2 = exact_div(c, g);
    d = exact_div(d, g) - c2.derivative();
    c = std::move(c2);
  }
  return out;
}

template <class F>
Poly<F> squarefree_part(const Poly<F>& p) {
  Poly<F> r(F(1));
  for (const auto& f : squarefree_factorize(p)) r *= f.factor;
  return r;
}

// Multiplicity of the squarefree polynomial v in p (largest k with v^k | p).
template <class F>
int multiplicity(Poly<F> p, const Poly<F>& v) {
  if (p.is_zero()) fail(ErrorCode::kZeroInput, "multiplicity in zero polynomial");
  if (v.degree() <= 0) return 0;
  int k = 0;
  for (;;) {
    auto [q, r] = divmod(p, v);
    if (!r.is_zero()) return k;
    p = std::move(q);
    ++k;
  }
}

}  // namespace dfred
