#pragma once

#include <map>
#include <optional>
#include <utility>

#include "dfred/field.hpp"

namespace dfred {

// Truncated sum of c * z^e * log(z)^l with rational exponents e. Terms with
// exponent below prec() are exact; an unset precision means the series is
// known exactly.
class Series {
 public:
  using Key = std::pair<Rational, int>;
  using Terms = std::map<Key, Coeff>;

  Series() = default;
  static Series exact(Terms terms) {
    Series s;
    s.terms_ = std::move(terms);
    s.clean();
    return s;
  }
  static Series truncated(Terms terms, Rational prec) {
    Series s;
    s.terms_ = std::move(terms);
    s.prec_ = std::move(prec);
    s.clean();
    return s;
  }
  static Series monomial(const Coeff& c, const Rational& e, int l = 0) { return exact({{{e, l}, c}}); }

  const Terms& terms() const { return terms_; }
  const std::optional<Rational>& prec() const { return prec_; }
  bool is_exact() const { return !prec_.has_value(); }
  bool is_exact_zero() const { return is_exact() && terms_.empty(); }

  // Smallest exponent with a nonzero known coefficient.
  std::optional<Rational> valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.first;
  }
  // Certified lower bound for the valuation; nullopt for exact zero.
  std::optional<Rational> lower_bound() const {
    if (auto v = valuation()) return v;
    return prec_;
  }
  int max_log() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.second);
    return m;
  }

  Coeff coeff(const Rational& e, int l = 0) const {
    auto it = terms_.find({e, l});
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  // Whether the coefficient of z^e is determined.
  bool known(const Rational& e) const { return !prec_ || e < *prec_; }

  Series operator-() const {
    Series r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  friend Series operator+(const Series& a, const Series& b) {
    Series r = a;
    r.prec_ = min_prec(a.prec_, b.prec_);
    for (const auto& [k, c] : b.terms_) r.terms_[k] += c;
    r.clean();
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    auto la = a.lower_bound(), lb = b.lower_bound();
    if (!la || !lb) return r;  // one factor is exactly zero
    std::optional<Rational> pa, pb;
    if (a.prec_) pa = Rational(*a.prec_ + *lb);
    if (b.prec_) pb = Rational(*b.prec_ + *la);
    r.prec_ = min_prec(pa, pb);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Rational e = ka.first + kb.first;
        if (r.prec_ && e >= *r.prec_) continue;
        r.terms_[{e, ka.second + kb.second}] += ca * cb;
      }
    r.clean();
    return r;
  }
  Series scaled(const Coeff& c) const {
    if (c.is_zero()) return Series();
    Series r = *this;
    for (auto& [k, x] : r.terms_) x *= c;
    return r;
  }
  // Multiply by z^e.
  Series shifted(const Rational& e) const {
    Series r;
    for (const auto& [k, c] : terms_) r.terms_[{Rational(k.first + e), k.second}] = c;
    if (prec_) r.prec_ = Rational(*prec_ + e);
    return r;
  }
  // z d/dz
  Series theta() const {
    Series r;
    r.prec_ = prec_;
    for (const auto& [k, c] : terms_) {
      if (k.first != 0) r.terms_[k] += c * Coeff(k.first);
      if (k.second > 0) r.terms_[{k.first, k.second - 1}] += c * Coeff(Rational(k.second));
    }
    r.clean();
    return r;
  }
  // Lower the precision to p (no-op if already lower).
  Series with_prec(const Rational& p) const {
    Series r = *this;
    r.prec_ = min_prec(prec_, std::optional<Rational>(p));
    r.clean();
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) { return a.terms_ == b.terms_ && a.prec_ == b.prec_; }

 private:
  static std::optional<Rational> min_prec(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
  }
  void clean() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero() || (prec_ && it->first.first >= *prec_))
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  Terms terms_;
  std::optional<Rational> prec_;
};

}  // namespace dfred
