#pragma once

#include <optional>
#include <vector>

#include "dfred/hermite.hpp"
#include "dfred/integral_basis.hpp"

namespace dfred {

struct DecompositionBounds {
  int lambda = 0;
  XPoly e;
  XPoly u;  // gcd(e, e')
  std::vector<int> tau;
  int mu = 0, delta = -1;
  int mu_prime = 0, delta_prime = -1;
};

DecompositionBounds compute_bounds(const IntegralBasisResult& bases);

// h_i = r_i e + s_i d with deg r_i < deg d.
struct SplitRemainder {
  XVec r;
  XVec s;
};
SplitRemainder split_remainder(const FiniteRemainder& h);

// K = { x^j v_i / (x^lambda e) : mu <= j <= delta }, indexed in term over
// position order: index 0 is the largest term x^delta v_1.
// U = { x^j v_i / u : mu' <= j <= delta' } with the same layout.
class CandidateSpaces {
 public:
  CandidateSpaces(const IntegralBasisResult& bases, DecompositionBounds bounds);

  const DecompositionBounds& bounds() const { return bounds_; }
  std::size_t k_dim() const { return k_dim_; }
  std::size_t u_dim() const { return u_dim_; }
  std::pair<int, std::size_t> k_term(std::size_t index) const;  // (j, i)
  std::optional<std::size_t> k_index(int j, std::size_t i) const;

  // V-coordinates of the basis elements.
  RVec k_element(std::size_t index) const;
  RVec u_element(std::size_t index) const;
  RVec k_combination(const Vec<Coeff>& c) const;
  RVec u_combination(const Vec<Coeff>& c) const;

  // K-coordinates of an element given in V-coordinates, if it lies in K.
  std::optional<Vec<Coeff>> to_k_coords(const RVec& v) const;

  // Reduced echelon basis of the intersection of K and U'; row k has
  // leading term pivots()[k], and (u_combination(preimages()[k]))' equals it.
  const std::vector<Vec<Coeff>>& intersection_basis() const { return ku_; }
  const std::vector<Vec<Coeff>>& preimages() const { return pre_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // q = (element of K and U') + complement; returns the complement and the
  // U-coordinates of an integral of the removed part.
  std::pair<Vec<Coeff>, Vec<Coeff>> project(const Vec<Coeff>& q) const;

 private:
  FramePtr v_;
  DecompositionBounds bounds_;
  std::size_t n_ = 0, k_dim_ = 0, u_dim_ = 0;
  std::vector<Vec<Coeff>> ku_;
  std::vector<Vec<Coeff>> pre_;
  std::vector<std::size_t> pivots_;
};

// f = g' + (1/d) R W + (1/(x^lambda e)) Q2 V.
struct AdditiveDecomposition {
  RVec g;           // W-coordinates
  XVec r;
  XPoly d;
  Vec<Coeff> q2;    // K-coordinates
  RVec q2_coords;   // the last summand in V-coordinates
  RVec remainder;   // (1/d) R W + (1/(x^lambda e)) Q2 V in W-coordinates
  bool integrable = false;
};

// Holds the frames and the candidate spaces of one operator.
class Decomposer {
 public:
  explicit Decomposer(IntegralBasisResult bases);

  const IntegralBasisResult& bases() const { return bases_; }
  const CandidateSpaces& spaces() const { return spaces_; }

  // f in W-coordinates.
  AdditiveDecomposition decompose(const RVec& f) const;
  // An antiderivative in W-coordinates, or nullopt when f is not integrable.
  std::optional<RVec> integrate(const RVec& f) const;

 private:
  IntegralBasisResult bases_;
  CandidateSpaces spaces_;
};

}  // namespace dfred
