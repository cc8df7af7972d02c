#include "dfred/cli.hpp"

#include <chrono>
#include <sstream>

#include "dfred/telescoping.hpp"

namespace dfred::cli {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Json poly_matrix(const XMatrix& m, const CoeffField& f) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(to_string(p, f));
    out.push_back(r);
  }
  return out;
}

Json frame_json(const BasisFrame& frame, const CoeffField& f) {
  Json els = Json::array();
  for (const auto& row : frame.elements()) els.push_back(to_string(frame.ambient().as_operator(row), f));
  return els;
}

struct Context {
  CoeffField field;
  AmbientPtr ambient;
  IntegralBasisResult bases;
};

Context prepare(const Request& req, const std::vector<std::string>& texts) {
  Context c;
  c.field = detect_field(texts);
  c.ambient = std::make_shared<Ambient>(parse_operator(req.op, c.field), c.field);
  if (c.ambient->order() < 1) fail(ErrorCode::kPrecondition, "operator must have order at least 1");
  if (req.frames.empty()) {
    LocalAnalyzer an(c.ambient, req.truncation);
    c.bases = compute_integral_bases(an, req.max_enlarge);
  } else {
    const auto parts = split(req.frames, ';');
    if (parts.size() != 2) fail(ErrorCode::kParseError, "--frames expects 'w1, ..., wn; v1, ..., vn'");
    RMatrix rows[2];
    for (int k = 0; k < 2; ++k)
      for (const auto& t : split(parts[static_cast<std::size_t>(k)], ','))
        rows[k].push_back(c.ambient->reduce(parse_operator(t, c.field)));
    auto w = frame_matrix(c.ambient, rows[0], FrameKind::kGlobalIntegral, "w");
    auto v = frame_matrix(c.ambient, rows[1], FrameKind::kLocalAtInfinity, "v");
    c.bases = integral_bases_from_frames(w, v);
  }
  return c;
}

void put_inputs(Json& p, const Context& c) {
  p["operator"] = to_string(c.ambient->op(), c.field);
  p["field"] = c.field.has_param() ? "Q(" + c.field.param + ")" : "Q";
}

void put_basis(Json& p, const Context& c) {
  const auto& b = c.bases;
  p["w"] = frame_json(*b.w, c.field);
  p["e"] = to_string(b.w->e(), c.field);
  p["M"] = poly_matrix(b.w->m(), c.field);
  p["v"] = frame_json(*b.v, c.field);
  Json tau = Json::array();
  for (int t : b.normalization.tau) tau.push_back(std::to_string(t));
  p["tau"] = tau;
  p["lambda"] = std::to_string(b.lambda);
  p["a"] = to_string(b.a, c.field);
  p["B"] = poly_matrix(b.b, c.field);
}

std::string w_string(const RVec& v, const Context& c) { return element_to_string(v, c.field, "w"); }

Response dispatch(const Request& req) {
  Response r;
  Json& p = r.payload;
  if (req.command == "basis") {
    Context c = prepare(req, {req.op});
    put_inputs(p, c);
    put_basis(p, c);
    return r;
  }
  if (req.command == "reduce" || req.command == "decompose" || req.command == "integrate") {
    Context c = prepare(req, {req.op, req.element});
    const RVec f = parse_element(req.element, *c.bases.w);
    put_inputs(p, c);
    p["element"] = w_string(f, c);
    if (req.command == "reduce") {
      FiniteRemainder h = hermite_reduce_finite(f, *c.bases.w);
      p["integral"] = w_string(h.g, c);
      p["d"] = to_string(h.d, c.field);
      p["remainder"] = w_string(h.remainder(), c);
      return r;
    }
    Decomposer dec(c.bases);
    AdditiveDecomposition d = dec.decompose(f);
    r.status = d.integrable ? Status::kOk : Status::kNotIntegrable;
    p["integrable"] = d.integrable ? "true" : "false";
    p["integral"] = w_string(d.g, c);
    if (req.command == "decompose") {
      RVec rd;
      for (const auto& ri : d.r) rd.push_back(XRat(ri, d.d));
      p["d"] = to_string(d.d, c.field);
      p["finite_part"] = w_string(rd, c);
      p["infinite_part"] = element_to_string(d.q2_coords, c.field, "v");
    }
    p["remainder"] = w_string(d.remainder, c);
    return r;
  }
  if (req.command == "telescope") {
    if (req.partial != "dt" && req.partial != "sn") fail(ErrorCode::kParseError, "--partial must be dt or sn");
    Context c = prepare(req, {req.op, req.ut, req.element});
    const PartialKind kind = req.partial == "sn" ? PartialKind::kShift : PartialKind::kDerivation;
    DFiniteIdeal ideal = make_ideal(c.ambient, kind, parse_operator(req.ut, c.field));
    const RVec f = parse_element(req.element, *c.bases.w);
    put_inputs(p, c);
    p["ut"] = to_string(ideal.ut, c.field);
    p["partial"] = partial_symbol(kind);
    p["element"] = w_string(f, c);
    Decomposer dec(c.bases);
    TelescoperSearch s = telescoper(f, ideal, dec, req.max_order.value_or(-1));
    p["max_order"] = std::to_string(s.max_order);
    if (!s.result) {
      r.status = Status::kNoneUpToBound;
      return r;
    }
    p["telescoper"] = to_string(s.result->telescoper, c.field);
    p["order"] = std::to_string(s.result->order());
    p["certificate"] = w_string(s.result->certificate, c);
    Json rems = Json::array();
    for (const auto& h : s.result->decompositions) rems.push_back(w_string(h.remainder, c));
    p["remainders"] = rems;
    return r;
  }
  fail(ErrorCode::kParseError, "unknown command '" + req.command + "'");
}

void render_value(std::ostringstream& os, const Json& v) {
  if (v.is_string()) {
    os << v.get<std::string>();
    return;
  }
  os << '[';
  bool first = true;
  for (const auto& x : v) {
    if (!first) os << ", ";
    first = false;
    render_value(os, x);
  }
  os << ']';
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::kOk: return "ok";
    case Status::kNotIntegrable: return "not-integrable";
    case Status::kNoneUpToBound: return "none-up-to-bound";
    case Status::kError: return "error";
  }
  return "error";
}

Response run(const Request& request) {
  const auto start = std::chrono::steady_clock::now();
  Response r;
  try {
    r = dispatch(request);
  } catch (const Error& e) {
    r = Response{};
    r.status = Status::kError;
    r.payload["code"] = std::string(error_code_name(e.code()));
    r.payload["message"] = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string render_text(const Response& response) {
  std::ostringstream os;
  os << "status: " << status_name(response.status) << '\n';
  for (const auto& [k, v] : response.payload.items()) {
    os << k << ": ";
    render_value(os, v);
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Request& request, const Response& response) {
  Json doc;
  doc["command"] = request.command;
  doc["status"] = status_name(response.status);
  doc["result"] = response.payload;
  doc["seconds"] = response.seconds;
  return doc.dump(2) + "\n";
}

}  // namespace dfred::cli
