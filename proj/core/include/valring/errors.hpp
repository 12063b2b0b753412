#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace valring {

/// Machine-readable reason attached to every error the library raises.
enum class Reason {
  malformed_divisor,
  undefined_resultant,
  no_convergence,
  oracle_unavailable,
  unsupported_normalization,
  ramified_branch,
  ambiguous_branch,
  position_out_of_range,
  insufficient_depth,
  invalid_pair,
  non_neat_pair,
  not_strongly_monic,
  not_in_ideal,
  offset_precondition,
  step_cap_exceeded,
  zero_polynomial,
  not_prime,
  reducible_generator,
  parse_error,
  malformed_input,
  internal_error,
};

std::string_view reason_code(Reason r);

/// True for rejections that are mathematical (CLI exit status 2) rather than
/// malformed input (exit status 1).
bool is_mathematical(Reason r);

class Error : public std::runtime_error {
 public:
  Error(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

}  // namespace valring
