#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dfred/congruence.hpp"
#include "dfred/field.hpp"
#include "dfred/linalg.hpp"

namespace dfred {

// Sum of c[i] * D^i with coefficients on the left; Dx = xD + 1.
class OreOperator {
 public:
  OreOperator() = default;
  explicit OreOperator(std::vector<XRat> coeffs) : c_(std::move(coeffs)) { trim(); }
  OreOperator(const XRat& r) : c_{r} { trim(); }  // NOLINT
  static OreOperator d() { return OreOperator(std::vector<XRat>{XRat(0), XRat(1)}); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero operator.
  int order() const { return static_cast<int>(c_.size()) - 1; }
  XRat coeff(int i) const { return i >= 0 && i <= order() ? c_[static_cast<std::size_t>(i)] : XRat(0); }
  const std::vector<XRat>& coeffs() const { return c_; }
  const XRat& lc() const { return c_.back(); }

  friend OreOperator operator+(const OreOperator& a, const OreOperator& b);
  friend OreOperator operator-(const OreOperator& a, const OreOperator& b);
  OreOperator operator-() const;
  friend bool operator==(const OreOperator& a, const OreOperator& b) { return a.c_ == b.c_; }

  // Apply a map to every coefficient.
  template <class Fn>
  OreOperator map_coeffs(Fn fn) const {
    std::vector<XRat> out;
    for (const auto& c : c_) out.push_back(fn(c));
    return OreOperator(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<XRat> c_;
};

OreOperator op_multiply(const OreOperator& p, const OreOperator& q);
OreOperator operator*(const OreOperator& p, const OreOperator& q);

// The module A = C(x)[D]/<L>; elements are coordinate vectors in the
// standard basis 1, D, ..., D^(n-1).
class Ambient {
 public:
  Ambient(OreOperator l, CoeffField field);

  const OreOperator& op() const { return l_; }
  const CoeffField& field() const { return field_; }
  int order() const { return n_; }

  // Remainder of right division by L, as standard coordinates.
  RVec reduce(const OreOperator& p) const;
  // Standard coordinates as an operator of order < n.
  OreOperator as_operator(const RVec& coords) const;
  // D applied to an element in standard coordinates.
  RVec derivative(const RVec& coords) const;
  RVec zero() const { return RVec(static_cast<std::size_t>(n_), XRat(0)); }
  RVec unit(int i) const;

 private:
  OreOperator l_;
  CoeffField field_;
  int n_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

enum class FrameKind { kStandard, kPlain, kGlobalIntegral, kLocalAtInfinity, kNormalAtInfinity };

std::string frame_kind_name(FrameKind k);

// A basis W of A with e*W' = M*W. Row i of `elements` holds the standard
// coordinates of the i-th basis element.
class BasisFrame {
 public:
  BasisFrame(AmbientPtr ambient, RMatrix elements, FrameKind kind, std::string symbol = "w");

  const Ambient& ambient() const { return *ambient_; }
  const AmbientPtr& ambient_ptr() const { return ambient_; }
  const RMatrix& elements() const { return elements_; }
  const RMatrix& inverse_elements() const { return inverse_; }
  const XPoly& e() const { return e_; }
  const XMatrix& m() const { return m_; }
  FrameKind kind() const { return kind_; }
  const std::string& symbol() const { return symbol_; }
  int size() const { return static_cast<int>(elements_.size()); }

  RVec to_standard(const RVec& coords) const { return coords * elements_; }
  RVec from_standard(const RVec& coords) const { return coords * inverse_; }
  // Derivative in frame coordinates: b' + b*M/e.
  RVec derivative(const RVec& coords) const;

 private:
  AmbientPtr ambient_;
  RMatrix elements_;
  RMatrix inverse_;
  XPoly e_;
  XMatrix m_;
  FrameKind kind_;
  std::string symbol_;
};

using FramePtr = std::shared_ptr<const BasisFrame>;

FramePtr standard_frame(const AmbientPtr& ambient);

// e and M with e*W' = M*W for the given basis; dependent rows raise
// kNotABasis.
FramePtr frame_matrix(const AmbientPtr& ambient, const RMatrix& elements, FrameKind kind = FrameKind::kPlain,
                      const std::string& symbol = "w");

struct ModuleElement {
  RVec coords;
  FramePtr frame;
};

ModuleElement element_derivative(const ModuleElement& f);
ModuleElement change_basis(const ModuleElement& f, const FramePtr& to);
RVec change_basis(const RVec& coords, const BasisFrame& from, const BasisFrame& to);

// Operator printing in the expression grammar, e.g. "x^3*D^2 + (3*x^2 + 2)*D".
std::string to_string(const OreOperator& op, const CoeffField& field, const std::string& d = "D");
// Element printing as a sum of coefficient*symbol_i.
std::string element_to_string(const RVec& coords, const CoeffField& field, const std::string& symbol);

}  // namespace dfred
