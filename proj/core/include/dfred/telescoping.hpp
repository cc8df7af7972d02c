#pragma once

#include <optional>
#include <vector>

#include "dfred/decomposition.hpp"
#include "dfred/expr.hpp"

namespace dfred {

// The left ideal <L, partial - u_t>; u_t is stored reduced modulo L.
struct DFiniteIdeal {
  AmbientPtr ambient;
  PartialKind kind = PartialKind::kDerivation;
  OreOperator ut;
};

DFiniteIdeal make_ideal(const AmbientPtr& ambient, PartialKind kind, const OreOperator& ut);

// partial acting on an element in standard coordinates.
RVec partial_t_action(const RVec& f, const DFiniteIdeal& ideal);

// D_x and partial commute on the given elements (standard coordinates).
bool commutes_on(const DFiniteIdeal& ideal, const std::vector<RVec>& samples);

struct TelescoperResult {
  ParamOperator telescoper;  // primitive in Q[p], positive leading coefficient
  RVec certificate;          // W-coordinates
  std::vector<AdditiveDecomposition> decompositions;  // of partial^i f, i = 0..order
  int order() const { return telescoper.order(); }
};

struct TelescoperSearch {
  std::optional<TelescoperResult> result;
  int max_order = 0;  // bound that was searched
};

// n deg d + dim N_V for the decomposition of f.
int default_max_order(const Decomposer& dec, const AdditiveDecomposition& f);

// f in W-coordinates of dec. max_order < 0 selects the default bound.
TelescoperSearch telescoper(const RVec& f, const DFiniteIdeal& ideal, const Decomposer& dec, int max_order = -1);

// sum c_i partial^i f - g' = 0 in A.
bool verify_telescoper(const TelescoperResult& result, const RVec& f, const DFiniteIdeal& ideal, const Decomposer& dec);

}  // namespace dfred
