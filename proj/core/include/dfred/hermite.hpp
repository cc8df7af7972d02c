#pragma once

#include <optional>

#include "dfred/local.hpp"

namespace dfred {

// W' = z^-lambda * M * W at a place with nu(M) = 0; lambda is unset when
// W' = 0.
struct LocalFrameData {
  std::optional<int> lambda;
  RMatrix m;
};
LocalFrameData local_frame_data(const BasisFrame& frame, const Place& place);

// f = (sum b_i w_i / v^(d-1))' + sum c_i w_i / (u v^(d-1))
struct SquarefreeStep {
  XVec b;
  XVec c;
  std::size_t kernel_dim = 0;
};
SquarefreeStep hermite_step_squarefree(const XPoly& u, const XPoly& v, int d, const XVec& a, const BasisFrame& frame);

// f = z^-d sum a_i w_i = (z^-(d+mu) sum b_i w_i)' + z^-(d-1) sum c_i w_i,
// b given as rational functions of x of degree < lambda+mu+1 in z.
struct LocalStep {
  RVec b;
  RVec c;
  std::size_t kernel_dim = 0;
};
LocalStep hermite_step_at_place(const RVec& a, int d, const BasisFrame& frame, const Place& place);

// Rows: psi_i = z^lambda w_i' + mu(d+mu) z^(lambda+mu) w_i in w-coordinates.
RMatrix psi_frame(int d, const BasisFrame& frame, const Place& place);

// f = g' + sum h_i w_i / (d e) with d squarefree and gcd(d, e) = 1.
struct FiniteRemainder {
  RVec g;
  XVec h;
  XPoly d;
  XPoly e;
  RVec remainder() const;
};
FiniteRemainder hermite_reduce_finite(const RVec& f, const BasisFrame& frame);

// f = g' + h with polynomial g and deg h_i < max(0, lambda).
struct InfinityRemainder {
  RVec g;
  RVec h;
  int degree_bound = 0;  // max(0, lambda)
};
InfinityRemainder hermite_reduce_infinity(const RVec& f, const BasisFrame& frame);

}  // namespace dfred
