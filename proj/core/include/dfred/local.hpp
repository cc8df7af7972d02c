#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dfred/ore.hpp"
#include "dfred/series.hpp"

namespace dfred {

// A point x = alpha with alpha in the coefficient field, or infinity. The
// local parameter is z = x - alpha or z = 1/x.
struct Place {
  enum class Kind { kFinite, kInfinity };
  Kind kind = Kind::kFinite;
  Coeff alpha;

  static Place finite(Coeff a) { return {Kind::kFinite, std::move(a)}; }
  static Place infinity() { return {Kind::kInfinity, Coeff(0)}; }
  bool at_infinity() const { return kind == Kind::kInfinity; }
  // nu(z') = nu(z) + mu_z
  int mu_z() const { return at_infinity() ? 1 : -1; }
  // z as a rational function of x.
  XRat local_parameter() const;
  friend bool operator==(const Place& a, const Place& b) { return a.kind == b.kind && a.alpha == b.alpha; }
};

std::string to_string(const Place& p, const CoeffField& field);

// Exponential part exp(sum q[e] z^e), all e < 0, with exponents in (1/s)Z.
struct ExponentialPart {
  int s = 1;
  std::map<Rational, Coeff> q;
  int multiplicity = 0;
};

// One generalized series solution exp(Q) * u.
struct LocalSolution {
  ExponentialPart part;
  Series u;
  // D^i applied to exp(Q) u without the exp(Q) factor, i < n.
  std::vector<Series> derivatives;
};

struct LocalSolutionBasis {
  Place place;
  int truncation = 0;
  std::vector<LocalSolution> solutions;
};

// Laurent expansion of a rational function at a place, with absolute
// precision `prec` unless the expansion terminates.
Series expand_at(const XRat& f, const Place& place, int prec);

// Generalized series analysis of one operator. Solution bases are cached
// per (place, truncation); the cache is internally synchronized.
class LocalAnalyzer {
 public:
  explicit LocalAnalyzer(AmbientPtr ambient, int truncation = 0);

  const Ambient& ambient() const { return *ambient_; }

  std::vector<ExponentialPart> exponential_parts(const Place& place) const;
  std::shared_ptr<const LocalSolutionBasis> solution_basis(const Place& place, int truncation) const;
  int default_truncation(const Place& place) const;

  // P applied to exp(Q) u, returned without the exp(Q) factor.
  Series series_apply(const RVec& coords, const LocalSolution& y, const Place& place, int truncation) const;
  // Residual of L applied to a solution.
  Series residual(const LocalSolution& y, const Place& place, int truncation) const;

  // val at the place; nullopt stands for +infinity.
  std::optional<Rational> val(const RVec& coords, const Place& place) const;
  bool is_locally_integral(const RVec& coords, const Place& place) const;
  // Places where the normalized coefficients l_i/l_n have poles.
  std::vector<Place> singular_places() const;
  bool is_globally_integral(const RVec& coords) const;

  // Rows of coefficients of the terms with exponent below `bound` in
  // element_j * y_k, one column per element; c is in the kernel iff
  // val(sum c_j element_j) >= bound.
  Matrix<Coeff> low_term_conditions(const RMatrix& elements, const Place& place, const Rational& bound) const;

 private:
  template <class Fn>
  auto with_retries(const Place& place, Fn fn) const;

  AmbientPtr ambient_;
  int truncation_override_;
  mutable std::mutex mutex_;
  mutable std::vector<std::pair<std::pair<Place, int>, std::shared_ptr<const LocalSolutionBasis>>> cache_;
};

}  // namespace dfred
