#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valring/keychain.hpp"

namespace valring {

using Exponents = std::map<int, int>;  // position -> positive exponent

struct ExpansionTerm {
  Rational coeff;
  Exponents exps;
};

struct FullExpansion {
  int anchor = 0;
  std::vector<ExpansionTerm> terms;
  Value nu;  // nu_anchor(f)
  std::vector<int> tuple;  // appearing positions, decreasing

  UniPoly evaluate(const KeyChain& chain) const;
  std::string to_string() const;
};

// Truncation nu_i(f), coefficient values from the oracle.
Value truncate(const KeyChain& chain, int i, const UniPoly& f);

// Indices of the Q_i-expansion (or the normalized expansion) attaining nu_i(f).
std::vector<int> s_set(const KeyChain& chain, int i, const UniPoly& f, bool normalized = false);

FullExpansion full_expansion(const KeyChain& chain, int i, const UniPoly& f);

// Rebuilds the expansion determined by a decreasing tuple of positions.
FullExpansion expansion_from_tuple(const KeyChain& chain, int i, const UniPoly& f, const std::vector<int>& tuple);

// Violated conditions of a full expansion of f; empty when all hold.
std::vector<std::string> check_full_expansion(const KeyChain& chain, const FullExpansion& e, const UniPoly& f);

struct ExpansionLevel {
  int level = 0;
  bool neat = true;
  std::vector<std::optional<int>> j;  // per plateau below i_max, empty when absent
};

ExpansionLevel expansion_level(const Segmentation& seg, const FullExpansion& e);

// Combinatorial skeleton of the neat selection: plateau shapes and the
// offsets at which stored supports meet each infinite plateau.
struct NeatSkeleton {
  std::vector<bool> infinite;  // per plateau
  std::vector<std::map<int, int>> supports;  // plateau -> offset
};

struct NeatResult {
  NeatSkeleton skeleton;  // supports re-indexed
  std::map<int, std::pair<int, int>> dropped;  // plateau -> half-open offset window [s, u)
  int passes = 0;
};

NeatResult make_neat(const NeatSkeleton& skel, int s);

}  // namespace valring
