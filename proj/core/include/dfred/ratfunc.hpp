#pragma once

#include <optional>
#include <utility>

#include "dfred/poly.hpp"

namespace dfred {

// Canonical fraction num/den over F: den monic, gcd(num, den) = 1, and the
// zero fraction is 0/1. Two equal values always have identical storage.
template <class F>
class RatFunc {
 public:
  using Field = F;
  using PolyT = Poly<F>;

  RatFunc() : den_(F(1)) {}
  RatFunc(int c) : num_(F(c)), den_(F(1)) {}  // NOLINT
  RatFunc(const F& c) : num_(c), den_(F(1)) {}  // NOLINT
  RatFunc(PolyT p) : num_(std::move(p)), den_(F(1)) {}  // NOLINT
  RatFunc(PolyT num, PolyT den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  const PolyT& num() const { return num_; }
  const PolyT& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }
  // Constant value; only meaningful when is_constant().
  F constant() const { return num_.coeff(0); }

  // deg num - deg den; zero has no degree, reported as nullopt.
  std::optional<int> degree() const {
    if (is_zero()) return std::nullopt;
    return num_.degree() - den_.degree();
  }

  RatFunc operator-() const { return RatFunc(-num_, den_, Canonical{}); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    if (a.is_polynomial()) return RatFunc(a.num_ * b.den_ + b.num_, b.den_, Canonical{});
    if (b.is_polynomial()) return RatFunc(a.num_ + b.num_ * a.den_, a.den_, Canonical{});
    PolyT g = gcd(a.den_, b.den_);
    PolyT ad = exact_div(a.den_, g), bd = exact_div(b.den_, g);
    return RatFunc(a.num_ * bd + b.num_ * ad, a.den_ * bd);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_, PolyT(F(1)), Canonical{});
    PolyT g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    PolyT n = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    PolyT d = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    return RatFunc(std::move(n), std::move(d));
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorCode::kZeroInput, "division by zero rational function");
    return a * b.inverse();
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const {
    if (is_zero()) fail(ErrorCode::kZeroInput, "inverse of zero rational function");
    return RatFunc(den_, num_);
  }

  RatFunc derivative() const {
    if (is_polynomial()) return RatFunc(num_.derivative(), den_, Canonical{});
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  // Evaluation at a point where the denominator does not vanish.
  F evaluate(const F& at) const {
    F d = den_.evaluate(at);
    if (detail::coeff_is_zero(d)) fail(ErrorCode::kPrecondition, "evaluation at a pole");
    return num_.evaluate(at) / d;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  struct Canonical {};
  RatFunc(PolyT num, PolyT den, Canonical) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) den_ = PolyT(F(1));
  }

  void canonicalize() {
    if (den_.is_zero()) fail(ErrorCode::kZeroInput, "zero denominator");
    if (num_.is_zero()) {
      den_ = PolyT(F(1));
      return;
    }
    if (den_.degree() > 0) {
      PolyT g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
      }
    }
    F lc = den_.lc();
    if (!(lc == F(1))) {
      F inv = F(1) / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  PolyT num_;
  PolyT den_;
};

template <class F>
bool is_zero(const RatFunc<F>& r) {
  return r.is_zero();
}

// Over Q(p): primitive remainder sequence with coefficients in Q[p].
Poly<RatFunc<Rational>> gcd(Poly<RatFunc<Rational>> a, Poly<RatFunc<Rational>> b);

// Order of r at x = alpha (alpha in F); r must be nonzero.
template <class F>
int valuation_at(const RatFunc<F>& r, const F& alpha) {
  if (r.is_zero()) fail(ErrorCode::kZeroInput, "valuation of zero");
  Poly<F> lin = Poly<F>(std::vector<F>{-alpha, F(1)});
  return multiplicity(r.num(), lin) - multiplicity(r.den(), lin);
}

// deg den - deg num; r must be nonzero.
template <class F>
int valuation_at_infinity(const RatFunc<F>& r) {
  if (r.is_zero()) fail(ErrorCode::kZeroInput, "valuation of zero");
  return r.den().degree() - r.num().degree();
}

}  // namespace dfred
