#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "valring/expandval.hpp"
#include "valring/keychain.hpp"
#include "valring/presentrel.hpp"
#include "valring/rewrite.hpp"
#include "valring/verify.hpp"

namespace valring {

using Json = nlohmann::json;

// Rationals are "n" or "n/d" text; values add "inf".
Json to_json(const Rational& q);
Json to_json(const Value& v);
Json to_json(const UniPoly& f);
Json to_json(const XPoly& f);
Json to_json(const KeyChain& chain);
Json to_json(const Segmentation& seg);
Json to_json(const ValidationReport& rep);
Json to_json(const RelationGen& r);
Json to_json(const GeneratorSet& gs);
Json to_json(const PlateauRel& r);
Json to_json(const RedundancyCert& c);
Json to_json(const FullExpansion& e);
Json to_json(const Trace& t);
Json to_json(const Certificate& c);

// Throw Error(parse_error) naming the offending location.
Rational rational_from_json(const Json& j, const std::string& where = "");
Value value_from_json(const Json& j, const std::string& where = "");
/// Coefficient array, or text in x.
UniPoly upoly_from_json(const Json& j, const std::string& where = "");
/// Term list [{"c": .., "e": {..}}], or text in X0, X1, ...
XPoly xpoly_from_json(const Json& j, const std::string& where = "");
KeyChain chain_from_json(const Json& j);
RelationGen relation_from_json(const Json& j);
GeneratorSet generators_from_json(const Json& j);
FullExpansion expansion_from_json(const Json& j);
Trace trace_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);

/// Canonical text: sorted keys, two-space indent.
std::string dump(const Json& j);
Json parse_document(const std::string& text);

}  // namespace valring
