#include "dfred/field.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dfred {

Coeff shift_param(const Coeff& c, const Rational& by) {
  return Coeff(c.num().taylor_shift(by), c.den().taylor_shift(by));
}

Coeff derive_param(const Coeff& c) { return c.derivative(); }

namespace {

// Positive divisors of |n| (n != 0). Trial division; these are the small
// integers appearing in indicial and characteristic polynomials.
std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::map<Integer, int> factors;
  Integer m = n;
  for (Integer p = 2; p * p <= m && p < 1000000; ++p) {
    while (m % p == 0) {
      ++factors[p];
      m /= p;
    }
  }
  if (m > 1) ++factors[m];
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factors) {
    std::size_t size = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < size; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

// Integer primitive version of a rational polynomial.
std::vector<Integer> integer_coeffs(const ParamPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  for (const auto& c : p.coeffs()) {
    Rational s = c * Rational(l);
    out.push_back(s.get_num());
  }
  return out;
}

ParamPoly linear_factor(const Rational& r) { return ParamPoly(std::vector<Rational>{Rational(-r), Rational(1)}); }

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const ParamPoly& p0) {
  if (p0.is_zero()) fail(ErrorCode::kZeroInput, "roots of zero polynomial");
  std::vector<std::pair<Rational, int>> out;
  ParamPoly p = p0;
  int zero_mult = p.low_degree();
  if (zero_mult > 0) {
    out.push_back({Rational(0), zero_mult});
    p = exact_div(p, ParamPoly::monomial(Rational(1), zero_mult));
  }
  if (p.degree() <= 0) return out;
  std::vector<Integer> ic = integer_coeffs(p);
  std::vector<Integer> num_divs = divisors(ic.front());
  std::vector<Integer> den_divs = divisors(ic.back());
  std::set<Rational> candidates;
  for (const auto& a : num_divs)
    for (const auto& b : den_divs) {
      Rational q(a, b);
      q.canonicalize();
      candidates.insert(q);
      candidates.insert(Rational(-q));
    }
  for (const auto& q : candidates) {
    if (p.degree() <= 0) break;
    int mult = 0;
    ParamPoly lin = linear_factor(q);
    while (p.degree() > 0 && is_zero(p.evaluate(q))) {
      p = exact_div(p, lin);
      ++mult;
    }
    if (mult > 0) out.push_back({q, mult});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

// Clear denominators of a Q(p)[c] polynomial into coefficients in Q[p].
std::vector<ParamPoly> cleared(const Poly<Coeff>& p) {
  ParamPoly l(Rational(1));
  for (const auto& c : p.coeffs()) l = lcm(l, c.den());
  std::vector<ParamPoly> out;
  for (const auto& c : p.coeffs()) out.push_back(c.num() * exact_div(l, c.den()));
  return out;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const Poly<Coeff>& p) {
  if (p.is_zero()) fail(ErrorCode::kZeroInput, "roots of zero polynomial");
  // p(c) = sum_j param^j * P_j(c); constant roots are the roots of gcd_j P_j.
  std::vector<ParamPoly> cs = cleared(p);
  int max_pdeg = 0;
  for (const auto& c : cs) max_pdeg = std::max(max_pdeg, c.degree());
  ParamPoly g;
  for (int j = 0; j <= max_pdeg; ++j) {
    std::vector<Rational> pj;
    for (const auto& c : cs) pj.push_back(c.coeff(j));
    g = gcd(g, ParamPoly(std::move(pj)));
  }
  if (g.degree() <= 0) return {};
  auto roots = rational_roots(g);
  // multiplicity in p, not in g
  for (auto& [r, m] : roots) {
    Poly<Coeff> lin(std::vector<Coeff>{Coeff(Rational(-r)), Coeff(1)});
    m = multiplicity(p, lin);
  }
  return roots;
}

std::vector<FieldRoot> find_roots(const Poly<Coeff>& p0) {
  std::vector<FieldRoot> out;
  Poly<Coeff> p = p0;
  for (const auto& [r, m] : rational_roots(p0)) {
    out.push_back({Coeff(r), m});
    Poly<Coeff> lin(std::vector<Coeff>{Coeff(Rational(-r)), Coeff(1)});
    p = exact_div(p, pow(lin, m));
  }
  if (p.degree() <= 0) return out;
  // Remaining linear factors over Q(p), visible after squarefree splitting.
  for (const auto& sf : squarefree_factorize(p)) {
    if (sf.factor.degree() == 1) {
      Coeff root = -sf.factor.coeff(0) / sf.factor.coeff(1);
      out.push_back({root, sf.multiplicity});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

struct Term {
  bool negative = false;
  std::string body;
};

std::string join(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0)
      out += terms[i].negative ? "-" + terms[i].body : terms[i].body;
    else
      out += (terms[i].negative ? " - " : " + ") + terms[i].body;
  }
  return out;
}

std::string power(const std::string& var, int k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return var + "^" + std::to_string(k);
}

Term rational_term(const Rational& c, const std::string& mono) {
  Term t;
  t.negative = sgn(c) < 0;
  Rational a = abs(c);
  if (mono.empty())
    t.body = a.get_str();
  else if (a == 1)
    t.body = mono;
  else
    t.body = a.get_str() + "*" + mono;
  return t;
}

std::vector<Term> param_terms(const ParamPoly& p, const std::string& var) {
  std::vector<Term> terms;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (is_zero(c)) continue;
    terms.push_back(rational_term(c, power(var, k)));
  }
  return terms;
}

bool single_term(const ParamPoly& p) {
  int n = 0;
  for (const auto& c : p.coeffs()) n += is_zero(c) ? 0 : 1;
  return n <= 1;
}

Term coeff_term(const Coeff& c, const CoeffField& field, const std::string& mono) {
  if (c.is_constant()) return rational_term(as_rational(c), mono);
  if (c.is_polynomial() && single_term(c.num())) {
    const int k = c.num().degree();
    Term t = rational_term(c.num().lc(), power(field.param_name(), k));
    if (!mono.empty()) t.body += "*" + mono;
    return t;
  }
  Term t;
  t.body = "(" + to_string(c, field) + ")";
  if (!mono.empty()) t.body += "*" + mono;
  return t;
}

std::vector<Term> xpoly_terms(const XPoly& p, const CoeffField& field, const std::string& var) {
  std::vector<Term> terms;
  for (int k = p.degree(); k >= 0; --k) {
    const Coeff& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    terms.push_back(coeff_term(c, field, power(var, k)));
  }
  return terms;
}

std::string wrap_if(bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; }

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const ParamPoly& p, const std::string& var) { return join(param_terms(p, var)); }

std::string to_string(const Coeff& c, const CoeffField& field) {
  const std::string var = field.param_name();
  if (c.is_polynomial()) return to_string(c.num(), var);
  return wrap_if(!single_term(c.num()), to_string(c.num(), var)) + "/" +
         wrap_if(!single_term(c.den()), to_string(c.den(), var));
}

std::string to_string(const XPoly& p, const CoeffField& field, const std::string& var) {
  return join(xpoly_terms(p, field, var));
}

std::string to_string(const XRat& r, const CoeffField& field, const std::string& var) {
  if (r.is_polynomial()) return to_string(r.num(), field, var);
  auto nt = xpoly_terms(r.num(), field, var);
  auto dt = xpoly_terms(r.den(), field, var);
  return wrap_if(nt.size() > 1, join(nt)) + "/" + wrap_if(dt.size() > 1, join(dt));
}

}  // namespace dfred
