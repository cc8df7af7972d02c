#pragma once

#include <gmpxx.h>

#include <string>

namespace dfred {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "p/q" or "p"; never decimals.
inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

}  // namespace dfred
