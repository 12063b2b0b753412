#pragma once

#include <string>

#include "valring/rational.hpp"
#include "valring/upoly.hpp"

namespace valring {

/// The class of `rep` modulo p^exponent, with 0 <= rep < p^exponent.
struct ResidueClass {
  Integer rep;
  long exponent = 0;

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

/// Unique lift r mod p^N of a Hensel-liftable seed of a monic integral g
/// (v(g(seed)) > 2 v(g'(seed))). Throws Error(no_convergence) otherwise.
ResidueClass hensel_root(const PadicContext& ctx, const UniPoly& g, const ResidueClass& seed,
                         long precision);

/// Designates which extension of v_p to L = Q[x]/(g) is meant.
class Branch {
 public:
  enum class Kind { unique, rational_root, unresolved };

  static Branch unique() { return Branch(Kind::unique, {}); }
  /// Branch through the root of g in Z_p lifting `seed`.
  static Branch rational_root(ResidueClass seed) { return Branch(Kind::rational_root, std::move(seed)); }
  static Branch unresolved() { return Branch(Kind::unresolved, {}); }

  Kind kind() const { return kind_; }
  const ResidueClass& seed() const { return seed_; }
  std::string describe() const;

 private:
  Branch(Kind k, ResidueClass s) : kind_(k), seed_(std::move(s)) {}
  Kind kind_;
  ResidueClass seed_;
};

enum class OracleMethod { exact_zero, resultant, hensel };
std::string_view method_name(OracleMethod m);

struct OracleValue {
  Value value;
  OracleMethod method;
};

/// Certified evaluation of nu(h) = v(h(eta)) for eta a root of g on the
/// designated branch. Never guesses: Error(oracle_unavailable) when neither
/// the resultant method (unique extension) nor the Hensel method (root in
/// Z_p) applies.
class NuOracle {
 public:
  /// Hensel certification margin: the reported value must stay this far
  /// below the working precision.
  static constexpr long kMargin = 2;

  NuOracle(PadicContext ctx, UniPoly g, Branch branch);

  OracleValue evaluate(const UniPoly& h) const;
  Value operator()(const UniPoly& h) const { return evaluate(h).value; }

  const PadicContext& context() const { return ctx_; }
  const UniPoly& generator() const { return g_; }
  const Branch& branch() const { return branch_; }

 private:
  PadicContext ctx_;
  UniPoly g_;
  Branch branch_;
};

}  // namespace valring
