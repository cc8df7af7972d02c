#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dfred/field.hpp"
#include "dfred/ore.hpp"

namespace dfred {

// Expression grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' '-'? integer)?
//   atom   := integer | symbol | '(' expr ')'
// Symbols: x, t, n, D, Dt, Sn and basis symbols such as w1 or v2. Products
// are noncommutative and evaluated left to right; '/' only divides by
// D-free values.
struct ExprNode {
  enum class Kind { kNumber, kSymbol, kAdd, kSub, kMul, kDiv, kNeg, kPow };
  Kind kind;
  std::string text;  // number digits or symbol name
  int exponent = 0;  // for kPow
  std::size_t pos = 0;
  std::shared_ptr<ExprNode> lhs, rhs;
};
using ExprPtr = std::shared_ptr<ExprNode>;

ExprPtr parse_expression(const std::string& text);

// Picks Q(t) or Q(n) when one of the texts mentions that symbol.
CoeffField detect_field(const std::vector<std::string>& texts);

OreOperator parse_operator(const std::string& text, const CoeffField& field);

// An element of A given in the basis `frame`. Basis symbols frame.symbol()1..
// denote its elements; plain operators are reduced modulo L and converted.
RVec parse_element(const std::string& text, const BasisFrame& frame);

// Operators in the parameter shift or derivation with Q(p) coefficients,
// stored as coefficients of partial^k.
enum class PartialKind { kDerivation, kShift };
struct ParamOperator {
  std::vector<Coeff> coeffs;
  PartialKind kind = PartialKind::kDerivation;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  friend bool operator==(const ParamOperator&, const ParamOperator&) = default;
};

ParamOperator parse_param_operator(const std::string& text, const CoeffField& field, PartialKind kind);
std::string to_string(const ParamOperator& op, const CoeffField& field);
std::string partial_symbol(PartialKind kind);

}  // namespace dfred
