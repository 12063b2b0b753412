#include "valring/errors.hpp"

namespace valring {

std::string_view reason_code(Reason r) {
  switch (r) {
    case Reason::malformed_divisor: return "malformed-divisor";
    case Reason::undefined_resultant: return "undefined-resultant";
    case Reason::no_convergence: return "no-convergence";
    case Reason::oracle_unavailable: return "oracle-unavailable";
    case Reason::unsupported_normalization: return "unsupported-normalization";
    case Reason::ramified_branch: return "ramified-branch";
    case Reason::ambiguous_branch: return "ambiguous-branch";
    case Reason::position_out_of_range: return "position-out-of-range";
    case Reason::insufficient_depth: return "insufficient-depth";
    case Reason::invalid_pair: return "invalid-pair";
    case Reason::non_neat_pair: return "non-neat-pair";
    case Reason::not_strongly_monic: return "not-strongly-monic";
    case Reason::not_in_ideal: return "not-in-ideal";
    case Reason::offset_precondition: return "offset-precondition";
    case Reason::step_cap_exceeded: return "step-cap-exceeded";
    case Reason::zero_polynomial: return "zero-polynomial";
    case Reason::not_prime: return "not-prime";
    case Reason::reducible_generator: return "reducible-generator";
    case Reason::parse_error: return "parse-error";
    case Reason::malformed_input: return "malformed-input";
    case Reason::internal_error: return "internal-error";
  }
  return "unknown";
}

bool is_mathematical(Reason r) {
  switch (r) {
    case Reason::ramified_branch:
    case Reason::not_in_ideal:
    case Reason::ambiguous_branch:
    case Reason::insufficient_depth:
    case Reason::oracle_unavailable:
    case Reason::no_convergence:
    case Reason::reducible_generator:
    case Reason::not_strongly_monic:
      return true;
    default:
      return false;
  }
}

}  // namespace valring
