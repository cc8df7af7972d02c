#include "dfred/ore.hpp"

namespace dfred {

OreOperator operator+(const OreOperator& a, const OreOperator& b) {
  std::vector<XRat> c(std::max(a.c_.size(), b.c_.size()), XRat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return OreOperator(std::move(c));
}

OreOperator OreOperator::operator-() const {
  std::vector<XRat> c;
  for (const auto& x : c_) c.push_back(-x);
  return OreOperator(std::move(c));
}

OreOperator operator-(const OreOperator& a, const OreOperator& b) { return a + (-b); }

OreOperator op_multiply(const OreOperator& p, const OreOperator& q) {
  if (p.is_zero() || q.is_zero()) return OreOperator();
  // (a D^i)(b D^j) = a * sum_k binom(i, k) b^(k) D^(i-k+j)
  std::vector<XRat> out(static_cast<std::size_t>(p.order() + q.order() + 1), XRat(0));
  for (int j = 0; j <= q.order(); ++j) {
    std::vector<XRat> ders{q.coeff(j)};
    for (int k = 1; k <= p.order(); ++k) ders.push_back(ders.back().derivative());
    for (int i = 0; i <= p.order(); ++i) {
      const XRat a = p.coeff(i);
      if (a.is_zero()) continue;
      Integer binom = 1;
      for (int k = 0; k <= i; ++k) {
        if (k > 0) binom = binom * (i - k + 1) / k;
        const XRat& bk = ders[static_cast<std::size_t>(k)];
        if (bk.is_zero()) continue;
        out[static_cast<std::size_t>(i - k + j)] += a * bk * XRat(Coeff(Rational(binom)));
      }
    }
  }
  return OreOperator(std::move(out));
}

OreOperator operator*(const OreOperator& p, const OreOperator& q) { return op_multiply(p, q); }

Ambient::Ambient(OreOperator l, CoeffField field) : l_(std::move(l)), field_(std::move(field)), n_(l_.order()) {
  if (n_ < 1) fail(ErrorCode::kPrecondition, "operator must have order at least 1");
}

RVec Ambient::reduce(const OreOperator& p) const {
  OreOperator r = p;
  while (r.order() >= n_) {
    const int shift = r.order() - n_;
    std::vector<XRat> dk(static_cast<std::size_t>(shift) + 1, XRat(0));
    dk.back() = r.lc() / l_.lc();
    r = r - op_multiply(OreOperator(std::move(dk)), l_);
  }
  RVec out = zero();
  for (int i = 0; i <= r.order(); ++i) out[static_cast<std::size_t>(i)] = r.coeff(i);
  return out;
}

OreOperator Ambient::as_operator(const RVec& coords) const { return OreOperator(coords); }

RVec Ambient::derivative(const RVec& coords) const {
  RVec out = zero();
  const std::size_t n = static_cast<std::size_t>(n_);
  for (std::size_t i = 0; i < n; ++i) {
    if (coords[i].is_zero()) continue;
    out[i] += coords[i].derivative();
    if (i + 1 < n) {
      out[i + 1] += coords[i];
    } else {
      // D^n = -sum l_k/l_n D^k
      for (std::size_t k = 0; k < n; ++k) {
        XRat lk = l_.coeff(static_cast<int>(k));
        if (lk.is_zero()) continue;
        out[k] -= coords[i] * lk / l_.lc();
      }
    }
  }
  return out;
}

RVec Ambient::unit(int i) const {
  RVec v = zero();
  v[static_cast<std::size_t>(i)] = XRat(1);
  return v;
}

std::string frame_kind_name(FrameKind k) {
  switch (k) {
    case FrameKind::kStandard: return "standard";
    case FrameKind::kPlain: return "plain";
    case FrameKind::kGlobalIntegral: return "global-integral";
    case FrameKind::kLocalAtInfinity: return "local-at-infinity";
    case FrameKind::kNormalAtInfinity: return "normal-at-infinity";
  }
  return "plain";
}

BasisFrame::BasisFrame(AmbientPtr ambient, RMatrix elements, FrameKind kind, std::string symbol)
    : ambient_(std::move(ambient)), elements_(std::move(elements)), kind_(kind), symbol_(std::move(symbol)) {
  const std::size_t n = static_cast<std::size_t>(ambient_->order());
  if (elements_.size() != n) fail(ErrorCode::kNotABasis, "wrong number of basis elements");
  for (const auto& row : elements_)
    if (row.size() != n) fail(ErrorCode::kNotABasis, "basis element has wrong length");
  auto inv = inverse(elements_);
  if (!inv) fail(ErrorCode::kNotABasis, "elements are linearly dependent");
  inverse_ = std::move(*inv);

  RMatrix derived;
  for (const auto& row : elements_) derived.push_back(ambient_->derivative(row));
  RMatrix t = derived * inverse_;
  XPoly e(Coeff(1));
  for (const auto& row : t)
    for (const auto& c : row) e = lcm(e, c.den());
  e_ = e;
  m_.assign(n, XVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      XRat prod = t[i][j] * XRat(e_);
      m_[i][j] = prod.num();
    }
}

RVec BasisFrame::derivative(const RVec& coords) const {
  RVec out(coords.size(), XRat(0));
  const XRat inv_e(XPoly(Coeff(1)), e_);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    out[i] += coords[i].derivative();
    const XRat s = coords[i] * inv_e;
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (!m_[i][j].is_zero()) out[j] += s * XRat(m_[i][j]);
  }
  return out;
}

FramePtr standard_frame(const AmbientPtr& ambient) {
  return std::make_shared<BasisFrame>(ambient, identity_matrix<XRat>(static_cast<std::size_t>(ambient->order())),
                                      FrameKind::kStandard, "D");
}

FramePtr frame_matrix(const AmbientPtr& ambient, const RMatrix& elements, FrameKind kind, const std::string& symbol) {
  return std::make_shared<BasisFrame>(ambient, elements, kind, symbol);
}

ModuleElement element_derivative(const ModuleElement& f) { return {f.frame->derivative(f.coords), f.frame}; }

RVec change_basis(const RVec& coords, const BasisFrame& from, const BasisFrame& to) {
  return to.from_standard(from.to_standard(coords));
}

ModuleElement change_basis(const ModuleElement& f, const FramePtr& to) {
  return {change_basis(f.coords, *f.frame, *to), to};
}

namespace {

struct Piece {
  bool negative = false;
  std::string body;
};

// A coefficient followed by `suffix` (empty for a bare coefficient).
Piece coefficient_piece(const XRat& c, const CoeffField& field, const std::string& suffix) {
  std::string s = to_string(c, field);
  Piece p;
  int terms = 0;
  for (const auto& k : c.num().coeffs()) terms += k.is_zero() ? 0 : 1;
  bool simple = terms <= 1 && s.find(' ') == std::string::npos;
  if (!simple && c.is_polynomial() && terms == 1) simple = s.front() == '(';
  if (simple) {
    p.negative = s.front() == '-';
    if (p.negative) s = s.substr(1);
  } else {
    s = "(" + s + ")";
  }
  if (suffix.empty())
    p.body = s;
  else if (s == "1")
    p.body = suffix;
  else
    p.body = s + "*" + suffix;
  return p;
}

std::string join(const std::vector<Piece>& pieces) {
  if (pieces.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == 0)
      out += (pieces[i].negative ? "-" : "") + pieces[i].body;
    else
      out += (pieces[i].negative ? " - " : " + ") + pieces[i].body;
  }
  return out;
}

}  // namespace

std::string to_string(const OreOperator& op, const CoeffField& field, const std::string& d) {
  std::vector<Piece> pieces;
  for (int i = op.order(); i >= 0; --i) {
    const XRat c = op.coeff(i);
    if (c.is_zero()) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? d : d + "^" + std::to_string(i));
    pieces.push_back(coefficient_piece(c, field, mono));
  }
  return join(pieces);
}

std::string element_to_string(const RVec& coords, const CoeffField& field, const std::string& symbol) {
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    pieces.push_back(coefficient_piece(coords[i], field, symbol + std::to_string(i + 1)));
  }
  return join(pieces);
}

}  // namespace dfred
