#pragma once

#include <vector>

#include "dfred/local.hpp"

namespace dfred {

struct NormalizationData {
  std::vector<int> tau;  // T = diag(x^tau_i)
};

// The two frames used by the decomposition: W global integral and normal at
// infinity, V = T*W local integral at infinity, and a*V' = B*V with a = x^lambda*e.
struct IntegralBasisResult {
  FramePtr w;
  FramePtr v;
  NormalizationData normalization;
  int lambda = 0;
  XPoly a;
  XMatrix b;
};

constexpr int kDefaultMaxEnlarge = 50;

FramePtr global_integral_basis(const LocalAnalyzer& analyzer, int max_enlarge = kDefaultMaxEnlarge);
FramePtr local_integral_basis_at_infinity(const LocalAnalyzer& analyzer, int max_enlarge = kDefaultMaxEnlarge);

// Row-reduces W at infinity until diag(x^tau)*W is a local integral basis at
// infinity; V only fixes the lattice at infinity.
std::pair<FramePtr, NormalizationData> normalize_at_infinity(const BasisFrame& w, const BasisFrame& v);

// Builds V = T*W, lambda, a and B from a normal W and its exponents.
IntegralBasisResult basis_result(const FramePtr& w, const NormalizationData& normalization);

IntegralBasisResult compute_integral_bases(const LocalAnalyzer& analyzer, int max_enlarge = kDefaultMaxEnlarge);

// For frames supplied by the caller (no local analysis needed).
IntegralBasisResult integral_bases_from_frames(const FramePtr& w, const FramePtr& v);

}  // namespace dfred
