#pragma once

#include <random>
#include <vector>

#include "dfred/decomposition.hpp"
#include "dfred/expr.hpp"

namespace dfred::samples {

inline const char* const kZeroIrregular = "x^3*D^2 + (3*x^2 + 2)*D";
inline const char* const kInfinityIrregular = "x*D^2 - (3*x^3 + 2)*D";

inline AmbientPtr ambient(const std::string& l, const CoeffField& f = CoeffField::rationals()) {
  return std::make_shared<Ambient>(parse_operator(l, f), f);
}

// Coordinates p_i / (x^a (x-1)^b e^c) with deg p_i <= 4, small integer
// coefficients and a, b in [0, 2], c in [0, 1].
class ElementSampler {
 public:
  ElementSampler(std::uint64_t seed, XPoly e) : rng_(seed), e_(std::move(e)) {}

  XRat coordinate() {
    std::uniform_int_distribution<int> coef(-5, 5), expo(0, 2), flag(0, 1), deg(0, 4);
    std::vector<Coeff> c;
    const int d = deg(rng_);
    for (int k = 0; k <= d; ++k) c.push_back(Coeff(Rational(coef(rng_))));
    XPoly den = pow(x_var(), expo(rng_)) * pow(x_var() - XPoly(Coeff(1)), expo(rng_));
    if (flag(rng_)) den *= e_;
    return XRat(XPoly(std::move(c)), den);
  }

  RVec element(std::size_t n) {
    RVec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(coordinate());
    return v;
  }

  // A nonzero element.
  RVec nonzero_element(std::size_t n) {
    for (;;) {
      RVec v = element(n);
      if (!is_zero_vector(v)) return v;
    }
  }

 private:
  std::mt19937_64 rng_;
  XPoly e_;
};

}  // namespace dfred::samples
