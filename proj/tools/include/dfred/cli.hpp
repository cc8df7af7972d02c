#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dfred::cli {

struct Request {
  std::string command;  // basis, reduce, decompose, integrate, telescope
  std::string op;
  std::string element = "1";
  std::string ut;
  std::string partial = "dt";
  std::optional<int> max_order;
  int truncation = 0;  // 0 selects the default
  int max_enlarge = 50;
  // "w1, w2, ...; v1, v2, ..." as operators in D; empty means computed.
  std::string frames;
};

enum class Status { kOk, kNotIntegrable, kNoneUpToBound, kError };
std::string status_name(Status s);

struct Response {
  Status status = Status::kOk;
  // Ordered result fields; every leaf is a string in the expression grammar.
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  double seconds = 0;
  int exit_code() const { return status == Status::kError ? 1 : 0; }
};

Response run(const Request& request);

std::string render_text(const Response& response);
std::string render_json(const Request& request, const Response& response);

}  // namespace dfred::cli
