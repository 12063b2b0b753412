#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "valring/cli.hpp"
#include "valring/errors.hpp"

namespace {

int emit(const valring::RunResult& res, const std::string& output) {
  const std::string text = valring::dump(res.document) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return 1;
    }
    out << text;
  }
  return res.status;
}

valring::RunResult failure(valring::Reason r, const std::string& msg) {
  valring::RunResult res;
  res.status = valring::is_mathematical(r) ? 2 : 1;
  res.document = {{"error", {{"reason", std::string(valring::reason_code(r))}, {"message", msg}}}};
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"valring: key polynomial chains and valuation ring presentations"};
  std::string config_path, command, output;
  bool trace = false;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "job config (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--command", command, "command to run")->required()->check(CLI::IsMember(valring::commands()));
  app.add_option("--output", output, "write the output document here instead of stdout");
  app.add_flag("--trace", trace, "include rewriting traces");
  app.add_option("--seed", seed, "seed for the property suite");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  valring::Json config;
  try {
    config = valring::parse_document(buf.str());
  } catch (const valring::Error& e) {
    return emit(failure(e.reason(), e.what()), output);
  }
  valring::RunOptions opts;
  opts.trace = trace;
  opts.seed = seed;
  return emit(valring::run(command, config, opts), output);
}
