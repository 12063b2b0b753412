#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valring/keychain.hpp"
#include "valring/serialize.hpp"

namespace valring {

struct Payload {
  std::optional<UniPoly> poly;
  std::optional<XPoly> xpoly;
  std::optional<int> position;
  std::optional<std::pair<int, int>> pair;  // (i, l)
  int s = 0;
};

struct JobConfig {
  long p = 0;
  UniPoly g;
  BranchSelector branch;
  int depth = 8;
  ChainMode mode = ChainMode::full;
  std::uint64_t seed = 1;
  Payload payload;
};

/// Rejects unknown fields with Error(parse_error).
JobConfig parse_config(const Json& j);

struct RunOptions {
  bool trace = false;
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

struct RunResult {
  int status = 0;
  Json document;
};

const std::vector<std::string>& commands();

/// Never throws: failures become {"error": {"reason", "message"}} documents.
RunResult run(const std::string& command, const Json& config, const RunOptions& opts = {});

}  // namespace valring
