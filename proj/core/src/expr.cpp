#include "dfred/expr.hpp"

#include <cctype>
#include <optional>

namespace dfred {

namespace {

struct Token {
  enum class Kind { kNumber, kSymbol, kOp, kEnd };
  Kind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::kNumber, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::kSymbol, s.substr(i, j - i), i});
      i = j;
    } else if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Token::Kind::kOp, std::string(1, c), i});
      ++i;
    } else {
      fail(ErrorCode::kParseError, "unexpected character '" + std::string(1, c) + "' at position " + std::to_string(i));
    }
  }
  out.push_back({Token::Kind::kEnd, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (peek().kind != Token::Kind::kEnd) error("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_op(const char* op) const { return peek().kind == Token::Kind::kOp && peek().text == op; }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::kParseError, msg + " at position " + std::to_string(peek().pos));
  }

  static ExprPtr node(ExprNode::Kind k, std::size_t pos, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->pos = pos;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (is_op("+") || is_op("-")) {
      const bool plus = peek().text == "+";
      const std::size_t p = peek().pos;
      ++pos_;
      e = node(plus ? ExprNode::Kind::kAdd : ExprNode::Kind::kSub, p, e, term());
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (is_op("*") || is_op("/")) {
      const bool mul = peek().text == "*";
      const std::size_t p = peek().pos;
      ++pos_;
      e = node(mul ? ExprNode::Kind::kMul : ExprNode::Kind::kDiv, p, e, unary());
    }
    return e;
  }

  ExprPtr unary() {
    if (is_op("-")) {
      const std::size_t p = peek().pos;
      ++pos_;
      return node(ExprNode::Kind::kNeg, p, unary());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!is_op("^")) return base;
    const std::size_t p = peek().pos;
    ++pos_;
    bool negative = false;
    if (is_op("-")) {
      negative = true;
      ++pos_;
    }
    if (peek().kind != Token::Kind::kNumber) error("expected integer exponent");
    if (peek().text.size() > 6) error("exponent too large");
    int k = std::stoi(peek().text);
    ++pos_;
    ExprPtr n = node(ExprNode::Kind::kPow, p, base);
    n->exponent = negative ? -k : k;
    return n;
  }

  ExprPtr atom() {
    const Token t = peek();
    if (t.kind == Token::Kind::kNumber) {
      ++pos_;
      ExprPtr n = node(ExprNode::Kind::kNumber, t.pos);
      n->text = t.text;
      return n;
    }
    if (t.kind == Token::Kind::kSymbol) {
      ++pos_;
      ExprPtr n = node(ExprNode::Kind::kSymbol, t.pos);
      n->text = t.text;
      return n;
    }
    if (is_op("(")) {
      ++pos_;
      ExprPtr e = expr();
      if (!is_op(")")) error("expected ')'");
      ++pos_;
      return e;
    }
    if (t.kind == Token::Kind::kEnd) error("unexpected end of input");
    error("unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

[[noreturn]] void symbol_error(const ExprNode& n) {
  fail(ErrorCode::kUnknownSymbol, "unknown symbol '" + n.text + "' at position " + std::to_string(n.pos));
}

[[noreturn]] void algebra_error(const ExprNode& n, const std::string& msg) {
  fail(ErrorCode::kParseError, msg + " at position " + std::to_string(n.pos));
}

// Generic evaluation; Alg supplies number, symbol, add, sub, mul, div, neg,
// one.
template <class Alg>
typename Alg::Value evaluate(const ExprNode& n, const Alg& alg) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::kNumber: return alg.number(Rational(Integer(n.text)));
    case K::kSymbol: return alg.symbol(n);
    case K::kAdd: return alg.add(evaluate(*n.lhs, alg), evaluate(*n.rhs, alg));
    case K::kSub: return alg.sub(evaluate(*n.lhs, alg), evaluate(*n.rhs, alg));
    case K::kMul: return alg.mul(evaluate(*n.lhs, alg), evaluate(*n.rhs, alg), n);
    case K::kDiv: return alg.div(evaluate(*n.lhs, alg), evaluate(*n.rhs, alg), n);
    case K::kNeg: return alg.sub(alg.number(Rational(0)), evaluate(*n.lhs, alg));
    case K::kPow: {
      auto base = evaluate(*n.lhs, alg);
      int k = n.exponent;
      if (k < 0) {
        base = alg.div(alg.number(Rational(1)), base, n);
        k = -k;
      }
      auto r = alg.number(Rational(1));
      for (int i = 0; i < k; ++i) r = alg.mul(r, base, n);
      return r;
    }
  }
  algebra_error(n, "bad expression");
}

XRat param_symbol(const ExprNode& n, const CoeffField& field) {
  if (field.has_param() && n.text == field.param) return XRat(XPoly(param_var()));
  symbol_error(n);
}

bool is_scalar(const OreOperator& op) { return op.order() <= 0; }
XRat scalar_of(const OreOperator& op) { return op.is_zero() ? XRat(0) : op.coeff(0); }

struct OperatorAlg {
  using Value = OreOperator;
  CoeffField field;
  Value number(const Rational& q) const { return OreOperator(XRat(Coeff(q))); }
  Value symbol(const ExprNode& n) const {
    if (n.text == "x") return OreOperator(XRat(x_var()));
    if (n.text == "D") return OreOperator::d();
    return OreOperator(param_symbol(n, field));
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b, const ExprNode&) const { return op_multiply(a, b); }
  Value div(const Value& a, const Value& b, const ExprNode& n) const {
    if (!is_scalar(b)) algebra_error(n, "division by an operator involving D");
    if (b.is_zero()) algebra_error(n, "division by zero");
    return op_multiply(a, OreOperator(scalar_of(b).inverse()));
  }
};

// Plain operator part plus coordinates on the named basis.
struct ElementValue {
  OreOperator op;
  RVec frame;
  bool has_frame() const { return !is_zero_vector(frame); }
};

struct ElementAlg {
  using Value = ElementValue;
  const BasisFrame* frame;
  OperatorAlg ops;
  Value lift(OreOperator op) const { return {std::move(op), frame->ambient().zero()}; }
  Value number(const Rational& q) const { return lift(ops.number(q)); }
  Value symbol(const ExprNode& n) const {
    const std::string& s = frame->symbol();
    if (n.text.size() > s.size() && n.text.compare(0, s.size(), s) == 0) {
      const std::string idx = n.text.substr(s.size());
      if (idx.find_first_not_of("0123456789") == std::string::npos && idx.size() < 4) {
        const int i = std::stoi(idx);
        if (i >= 1 && i <= frame->size()) {
          Value v = lift(OreOperator());
          v.frame[static_cast<std::size_t>(i - 1)] = XRat(1);
          return v;
        }
      }
    }
    return lift(ops.symbol(n));
  }
  Value add(const Value& a, const Value& b) const { return {a.op + b.op, a.frame + b.frame}; }
  Value sub(const Value& a, const Value& b) const { return {a.op - b.op, a.frame - b.frame}; }
  Value mul(const Value& a, const Value& b, const ExprNode& n) const {
    if (!a.has_frame() && !b.has_frame()) return lift(op_multiply(a.op, b.op));
    if (!a.has_frame() && is_scalar(a.op)) {
      const XRat s = scalar_of(a.op);
      return {op_multiply(a.op, b.op), scaled(b.frame, s)};
    }
    if (!b.has_frame() && is_scalar(b.op) && scalar_of(b.op).is_constant()) {
      const XRat s = scalar_of(b.op);
      return {op_multiply(a.op, b.op), scaled(a.frame, s)};
    }
    algebra_error(n, "basis symbols may only be multiplied by scalars on the left");
  }
  Value div(const Value& a, const Value& b, const ExprNode& n) const {
    if (b.has_frame() || !is_scalar(b.op)) algebra_error(n, "division by a non-scalar");
    if (b.op.is_zero()) algebra_error(n, "division by zero");
    const XRat s = scalar_of(b.op).inverse();
    return {op_multiply(a.op, OreOperator(s)), scaled(a.frame, s)};
  }
};

Coeff apply_partial(const Coeff& c, PartialKind kind, int times) {
  Coeff r = c;
  for (int i = 0; i < times; ++i) r = kind == PartialKind::kShift ? shift_param(r, Rational(1)) : derive_param(r);
  return r;
}

ParamOperator trim(ParamOperator op) {
  while (!op.coeffs.empty() && op.coeffs.back().is_zero()) op.coeffs.pop_back();
  return op;
}

struct ParamAlg {
  using Value = ParamOperator;
  CoeffField field;
  PartialKind kind;
  Value number(const Rational& q) const { return trim({{Coeff(q)}, kind}); }
  Value symbol(const ExprNode& n) const {
    if (n.text == partial_symbol(kind)) return {{Coeff(0), Coeff(1)}, kind};
    if (field.has_param() && n.text == field.param) return {{param_var()}, kind};
    symbol_error(n);
  }
  Value add(Value a, const Value& b) const {
    if (b.coeffs.size() > a.coeffs.size()) a.coeffs.resize(b.coeffs.size(), Coeff(0));
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return trim(std::move(a));
  }
  Value sub(const Value& a, Value b) const {
    for (auto& c : b.coeffs) c = -c;
    return add(a, b);
  }
  Value mul(const Value& a, const Value& b, const ExprNode&) const {
    Value r{{}, kind};
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      if (a.coeffs[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
        if (b.coeffs[j].is_zero()) continue;
        if (kind == PartialKind::kShift) {
          r.coeffs[i + j] += a.coeffs[i] * apply_partial(b.coeffs[j], kind, static_cast<int>(i));
        } else {
          Integer binom = 1;
          for (std::size_t k = 0; k <= i; ++k) {
            if (k > 0) binom = binom * static_cast<unsigned long>(i - k + 1) / static_cast<unsigned long>(k);
            r.coeffs[i - k + j] += a.coeffs[i] * apply_partial(b.coeffs[j], kind, static_cast<int>(k)) * Coeff(Rational(binom));
          }
        }
      }
    }
    return trim(std::move(r));
  }
  Value div(const Value& a, const Value& b, const ExprNode& n) const {
    if (b.coeffs.size() != 1) algebra_error(n, "division by a non-scalar");
    return mul(a, {{b.coeffs[0].inverse()}, kind}, n);
  }
};

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

CoeffField detect_field(const std::vector<std::string>& texts) {
  for (const auto& text : texts) {
    for (const auto& tok : tokenize(text)) {
      if (tok.kind != Token::Kind::kSymbol) continue;
      if (tok.text == "t" || tok.text == "n") return CoeffField::with_param(tok.text);
      if (tok.text == "Dt") return CoeffField::with_param("t");
      if (tok.text == "Sn") return CoeffField::with_param("n");
    }
  }
  return CoeffField::rationals();
}

OreOperator parse_operator(const std::string& text, const CoeffField& field) {
  return evaluate(*parse_expression(text), OperatorAlg{field});
}

RVec parse_element(const std::string& text, const BasisFrame& frame) {
  ElementAlg alg{&frame, OperatorAlg{frame.ambient().field()}};
  ElementValue v = evaluate(*parse_expression(text), alg);
  RVec out = v.frame;
  if (!v.op.is_zero()) out = out + frame.from_standard(frame.ambient().reduce(v.op));
  return out;
}

std::string partial_symbol(PartialKind kind) { return kind == PartialKind::kShift ? "Sn" : "Dt"; }

ParamOperator parse_param_operator(const std::string& text, const CoeffField& field, PartialKind kind) {
  return evaluate(*parse_expression(text), ParamAlg{field, kind});
}

std::string to_string(const ParamOperator& op, const CoeffField& field) {
  const std::string p = partial_symbol(op.kind);
  const std::string var = field.param_name();
  std::string out;
  auto emit = [&](bool negative, const std::string& body) {
    if (out.empty())
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  };
  for (int k = op.order(); k >= 0; --k) {
    const Coeff& c = op.coeffs[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    const std::string mono = k == 0 ? "" : (k == 1 ? p : p + "^" + std::to_string(k));
    if (c.is_polynomial()) {
      for (int j = c.num().degree(); j >= 0; --j) {
        Rational q = c.num().coeff(j);
        if (q == 0) continue;
        const bool neg = q < 0;
        if (neg) q = -q;
        std::string factors;
        if (j > 0) factors = j == 1 ? var : var + "^" + std::to_string(j);
        if (!mono.empty()) factors = factors.empty() ? mono : factors + "*" + mono;
        std::string body;
        if (factors.empty())
          body = q.get_str();
        else if (q == 1)
          body = factors;
        else
          body = q.get_str() + "*" + factors;
        emit(neg, body);
      }
    } else {
      const std::string s = "(" + to_string(c, field) + ")";
      emit(false, mono.empty() ? s : s + "*" + mono);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace dfred
