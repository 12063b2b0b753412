#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valring/keychain.hpp"
#include "valring/presentrel.hpp"
#include "valring/rewrite.hpp"

namespace valring {

/// X_k -> Qtilde_k(x)
UniPoly eval_e(const KeyChain& chain, const XPoly& f);

struct EtaValue {
  bool is_zero = false;
  Value value;  // nu of the remainder mod g; infinite when zero
};

/// Zero test by exact divisibility by g; the value comes from the oracle.
EtaValue eval_eta(const KeyChain& chain, const XPoly& f);

ValidationReport check_relations(const KeyChain& chain);

struct ProbeResult {
  std::optional<int> witness;  // empty: insufficient depth
  Value nu;
  Value truncated;  // truncation at the witness
};

ProbeResult completeness_probe(const KeyChain& chain, const UniPoly& f);

/// Full expansion of h at the first position computing nu(h), as an integral X-polynomial.
XPoly integral_rep(const KeyChain& chain, const UniPoly& h);

/// target = i2_gen * i2_cofactor + sum of terms
struct Certificate {
  XPoly target;
  std::vector<CofactorTerm> combination;
  std::optional<RelationGen> i2_gen;
  XPoly i2_cofactor;
  int level = 0;
  std::vector<std::string> denominators;
};

Certificate membership(const KeyChain& chain, const XPoly& f);

/// Violations of a certificate: exact re-expansion and integrality claims.
std::vector<std::string> check_certificate(const Certificate& cert);

}  // namespace valring
