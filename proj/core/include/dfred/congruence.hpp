#pragma once

#include <cstddef>
#include <cstdint>

#include "dfred/field.hpp"
#include "dfred/linalg.hpp"

namespace dfred {

using XMatrix = Matrix<XPoly>;
using XVec = Vec<XPoly>;
using RMatrix = Matrix<XRat>;
using RVec = Vec<XRat>;

// The ideal v^k of C[x] localized at the roots of v, or z^k with z = 1/x at
// infinity. Residues at infinity are polynomials in z.
struct LocalModulus {
  XPoly v;
  int k = 1;
  bool at_infinity = false;

  static LocalModulus finite(XPoly v, int k) { return {std::move(v), k, false}; }
  static LocalModulus infinity(int k) { return {XPoly::x(), k, true}; }
  XPoly power() const { return pow(v, k); }
};

// Residue of f modulo the local ideal; f must be regular at the place.
XPoly reduce_local(const XRat& f, const LocalModulus& m);

// Laurent expansion at infinity: coefficients of z^j for j = low .. high-1
// where z = 1/x. Entry i of the result is the coefficient of z^(low + i).
std::vector<Coeff> expand_at_infinity(const XRat& f, int low, int high);

struct CongruenceSolution {
  XVec b;
  std::size_t kernel_dim = 0;
};

// Solves b*A = r modulo the local ideal. The system is flattened to one
// field-linear system by coefficient comparison. When it has more than one
// solution, the residue of the exact solution r*A^-1 is returned, provided
// A is invertible over C(x) and that solution is regular at the place.
// No solution raises kContractViolated; an ambiguous system without such a
// lift raises kContractNonUnique. The result is checked by substitution.
CongruenceSolution congruence_solve(const RMatrix& a, const RVec& r, const LocalModulus& m);

// Polynomial form b*A = r mod v^lambda.
XVec congruence_solve(const XMatrix& a, const XVec& r, const XPoly& v, int lambda);

// Counters over all congruence_solve calls in this process.
struct CongruenceStats {
  std::uint64_t calls = 0;
  std::uint64_t verified = 0;
  std::uint64_t trivial_kernel = 0;
};
CongruenceStats congruence_stats();
void reset_congruence_stats();

}  // namespace dfred
