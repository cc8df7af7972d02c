#include "dfred/ratfunc.hpp"

namespace dfred {

namespace {

using QPoly = Poly<Rational>;
using QtRat = RatFunc<Rational>;
using QtPoly = Poly<QtRat>;

// Integer coefficients with content 1 and positive leading coefficient.
QPoly primitive(const QPoly& p) {
  if (p.is_zero()) return p;
  Integer l = 1, g = 0;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Rational> v;
  for (const auto& c : p.coeffs()) {
    Rational q = c * Rational(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    v.push_back(q);
  }
  if (p.lc() < 0) g = -g;
  for (auto& c : v) c /= Rational(g);
  return QPoly(std::move(v));
}

// lc(b)^k a - q b with deg < deg b; works on integer inputs without division.
template <class F>
Poly<F> pseudo_remainder(Poly<F> a, const Poly<F>& b) {
  const int db = b.degree();
  const F lb = b.lc();
  while (!a.is_zero() && a.degree() >= db) {
    const F la = a.lc();
    a = a.scaled(lb) - Poly<F>::monomial(la, a.degree() - db) * b;
  }
  return a;
}

// Q[p] coefficients with monic gcd 1.
QtPoly primitive(const QtPoly& p) {
  if (p.is_zero()) return p;
  QPoly den(Rational(1));
  for (const auto& c : p.coeffs()) den = lcm(den, c.den());
  std::vector<QPoly> nums;
  QPoly g;
  for (const auto& c : p.coeffs()) {
    nums.push_back((c * QtRat(den)).num());
    g = gcd(g, nums.back());
  }
  std::vector<QtRat> out;
  for (std::size_t i = 0; i < nums.size(); ++i) out.push_back(QtRat(exact_div(nums[i], g)));
  return QtPoly(std::move(out));
}

}  // namespace

QPoly gcd(QPoly a, QPoly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  a = primitive(a);
  b = primitive(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    QPoly r = primitive(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

QtPoly gcd(QtPoly a, QtPoly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  a = primitive(a);
  b = primitive(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    QtPoly r = primitive(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace dfred
