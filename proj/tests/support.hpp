#pragma once

#include <random>

#include "valring/keychain.hpp"
#include "valring/xpoly.hpp"

namespace testing_support {

using namespace valring;

inline const PadicContext& two() {
  static const PadicContext ctx(2);
  return ctx;
}

/// The four worked chains; C is the prefix of the given depth.
inline KeyChain ex(char which, int depth = 4, ChainMode mode = ChainMode::full) {
  switch (which) {
    case 'A': return build_chain(two(), UniPoly{3, 0, 1}, BranchSelector::make_unique(), depth, mode);
    case 'B': return build_chain(two(), UniPoly{1, -1, 1}, BranchSelector::make_unique(), depth, mode);
    case 'C': return build_chain(two(), UniPoly{7, 0, 1}, BranchSelector::of({{1, 0}}), depth, mode);
    default: return build_chain(two(), UniPoly{3, 8, 5, 2, 1}, BranchSelector::make_unique(), depth, mode);
  }
}

inline UniPoly random_poly(std::mt19937_64& rng, int deg, long height) {
  std::uniform_int_distribution<long> coef(-height, height);
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) c.push_back(coef(rng));
  return UniPoly(c);
}

/// Random integral polynomial in the given variables, bounded exponents.
inline XPoly random_xpoly(std::mt19937_64& rng, const std::vector<int>& vars, int terms, int max_exp, long height) {
  std::uniform_int_distribution<long> coef(-height, height);
  std::uniform_int_distribution<int> ex(0, max_exp);
  XPoly f;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int k : vars) {
      if (m.size() <= static_cast<std::size_t>(k)) m.resize(static_cast<std::size_t>(k) + 1, 0);
      m[static_cast<std::size_t>(k)] = ex(rng);
    }
    f += XPoly::term(coef(rng), m);
  }
  return f;
}

inline XPoly X(std::string_view s) { return parse_xpoly(s); }

}  // namespace testing_support
