#include <iostream>

#include "CLI11.hpp"
#include "dfred/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Integrability, additive decompositions and telescopers of D-finite functions"};
  app.require_subcommand(1);
  app.fallthrough();
  dfred::cli::Request req;
  bool json = false;
  app.add_flag("--json", json, "Print one JSON document");
  app.add_option("--truncation", req.truncation, "Series truncation order (0 = automatic)")->check(CLI::NonNegativeNumber);
  app.add_option("--max-enlarge", req.max_enlarge, "Cap on integral basis enlargement steps per place")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--frames", req.frames, "User bases 'w1, ..., wn; v1, ..., vn' as operators in D");

  auto* basis = app.add_subcommand("basis", "Integral bases and frame data");
  basis->add_option("L", req.op)->required();
  for (const char* name : {"reduce", "decompose", "integrate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("L", req.op)->required();
    sub->add_option("f", req.element, "Element in terms of w1..wn or as an operator")->required();
  }
  app.get_subcommand("reduce")->description("Hermite reduction at finite places");
  app.get_subcommand("decompose")->description("Additive decomposition");
  app.get_subcommand("integrate")->description("Antiderivative if one exists");
  auto* tele = app.add_subcommand("telescope", "Minimal telescoper");
  tele->add_option("L", req.op)->required();
  tele->add_option("ut", req.ut, "partial_t acts as this operator modulo L")->required();
  tele->add_option("--partial", req.partial)->check(CLI::IsMember({"dt", "sn"}))->required();
  tele->add_option("--max-order", req.max_order)->check(CLI::NonNegativeNumber);
  tele->add_option("--element", req.element, "Element to telescope (default 1)");

  CLI11_PARSE(app, argc, argv);
  req.command = app.get_subcommands().front()->get_name();

  const dfred::cli::Response res = dfred::cli::run(req);
  if (json)
    std::cout << dfred::cli::render_json(req, res);
  else if (res.status == dfred::cli::Status::kError)
    std::cerr << "error: " << res.payload["message"].get<std::string>() << '\n';
  else
    std::cout << dfred::cli::render_text(res);
  return res.exit_code();
}
