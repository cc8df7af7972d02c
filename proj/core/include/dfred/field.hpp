#pragma once

#include <string>
#include <vector>

#include "dfred/rational.hpp"
#include "dfred/ratfunc.hpp"

namespace dfred {

// Q[p] and Q(p): polynomials and fractions in the optional parameter p (t or n).
using ParamPoly = Poly<Rational>;
using Coeff = RatFunc<Rational>;

// Q(p)[x] and Q(p)(x).
using XPoly = Poly<Coeff>;
using XRat = RatFunc<Coeff>;

// The coefficient field C: either Q or Q(param).
struct CoeffField {
  enum class Kind { kRationals, kRationalFunctions };
  Kind kind = Kind::kRationals;
  std::string param;  // "t" or "n" when kind == kRationalFunctions

  static CoeffField rationals() { return {}; }
  static CoeffField with_param(std::string name) { return {Kind::kRationalFunctions, std::move(name)}; }
  bool has_param() const { return kind == Kind::kRationalFunctions; }
  // Name used when printing; "t" if none was fixed.
  std::string param_name() const { return has_param() ? param : std::string("t"); }

  friend bool operator==(const CoeffField&, const CoeffField&) = default;
};

inline Coeff coeff(long num, long den = 1) { return Coeff(make_rational(num, den)); }
inline Coeff param_var() { return Coeff(ParamPoly::x()); }
inline XPoly x_var() { return XPoly::x(); }
inline XRat xrat(const XPoly& num, const XPoly& den = XPoly(Coeff(1))) { return XRat(num, den); }

// True when c lies in Q (no parameter dependence).
inline bool is_rational_constant(const Coeff& c) { return c.is_constant(); }
inline Rational as_rational(const Coeff& c) { return c.num().coeff(0); }

// Polynomial and fraction in x from a Coeff-valued rational function of
// another variable (used for coefficient substitutions such as n -> n+1).
Coeff shift_param(const Coeff& c, const Rational& by);
Coeff derive_param(const Coeff& c);

// Roots in the field, with multiplicity. Only roots lying in Q(p) that are
// either rational constants or come from a linear factor over Q(p) are found.
struct FieldRoot {
  Coeff value;
  int multiplicity;
};
std::vector<FieldRoot> find_roots(const Poly<Coeff>& p);

// Rational roots of a polynomial with Q(p) coefficients that vanish
// identically in p.
std::vector<std::pair<Rational, int>> rational_roots(const Poly<Coeff>& p);
std::vector<std::pair<Rational, int>> rational_roots(const ParamPoly& p);

// Canonical printing in the expression grammar.
std::string to_string(const Rational& q);
std::string to_string(const ParamPoly& p, const std::string& var);
std::string to_string(const Coeff& c, const CoeffField& field);
std::string to_string(const XPoly& p, const CoeffField& field, const std::string& var = "x");
std::string to_string(const XRat& r, const CoeffField& field, const std::string& var = "x");

}  // namespace dfred
