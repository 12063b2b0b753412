#include "valring/serialize.hpp"

#include <map>

#include "valring/errors.hpp"

namespace valring {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(Reason::parse_error, (where.empty() ? std::string("document") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string sub(const std::string& where, const std::string& key) { return where + "/" + key; }

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

Json exps_json(const Monomial& m) {
  Json e = Json::object();
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] != 0) e[std::to_string(k)] = m[k];
  }
  return e;
}

Monomial exps_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an exponent map");
  Monomial m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(it.key(), &used);
      if (used != it.key().size() || k < 0) throw std::invalid_argument("index");
    } catch (const std::exception&) {
      bad(where, "invalid variable index '" + it.key() + "'");
    }
    const int e = int_from_json(it.value(), sub(where, it.key()));
    if (e < 0) bad(where, "negative exponent");
    if (m.size() <= static_cast<std::size_t>(k)) m.resize(static_cast<std::size_t>(k) + 1, 0);
    m[static_cast<std::size_t>(k)] = e;
  }
  return m;
}

ChainStatus status_from(const std::string& s, const std::string& where) {
  for (auto st : {ChainStatus::incomplete, ChainStatus::complete, ChainStatus::prefix}) {
    if (status_name(st) == s) return st;
  }
  bad(where, "unknown status '" + s + "'");
}

ChainMode mode_from(const std::string& s, const std::string& where) {
  if (s == "full") return ChainMode::full;
  if (s == "collapsed") return ChainMode::collapsed;
  bad(where, "unknown mode '" + s + "'");
}

Json branch_json(const Branch& b) {
  switch (b.kind()) {
    case Branch::Kind::unique: return {{"kind", "unique"}};
    case Branch::Kind::rational_root:
      return {{"kind", "rational-root"}, {"seed", {{"rep", b.seed().rep.get_str()}, {"exponent", b.seed().exponent}}}};
    case Branch::Kind::unresolved: return {{"kind", "unresolved"}};
  }
  return {{"kind", "unresolved"}};
}

Branch branch_from(const Json& j, const std::string& where) {
  const std::string kind = field(j, "kind", where).get<std::string>();
  if (kind == "unique") return Branch::unique();
  if (kind == "unresolved") return Branch::unresolved();
  if (kind != "rational-root") bad(where, "unknown branch kind '" + kind + "'");
  const Json& s = field(j, "seed", where);
  ResidueClass rc;
  try {
    rc.rep = Integer(field(s, "rep", where).get<std::string>());
  } catch (const std::invalid_argument&) {
    bad(where, "invalid seed");
  }
  rc.exponent = field(s, "exponent", where).get<long>();
  return Branch::rational_root(rc);
}

Json term_list(const std::vector<ExpansionTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) {
    Json e = Json::object();
    for (auto [k, x] : t.exps) e[std::to_string(k)] = x;
    out.push_back({{"c", to_json(t.coeff)}, {"e", e}});
  }
  return out;
}

std::pair<int, int> pair_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected a pair");
  return {int_from_json(j[0], where), int_from_json(j[1], where)};
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Value& v) { return to_string(v); }

Json to_json(const UniPoly& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const XPoly& f) {
  Json out = Json::array();
  for (const auto& [m, c] : f.terms()) out.push_back({{"c", to_json(c)}, {"e", exps_json(m)}});
  return out;
}

Json to_json(const KeyChain& chain) {
  Json entries = Json::array();
  for (const auto& e : chain.entries()) {
    entries.push_back({{"position", e.position},
                       {"q", to_json(e.q)},
                       {"gamma", to_json(e.gamma)},
                       {"scale", to_json(e.scale)},
                       {"normalized", to_json(e.normalized)}});
  }
  return {{"p", chain.context().prime()},
          {"g", to_json(chain.generator())},
          {"mode", std::string(mode_name(chain.mode()))},
          {"status", std::string(status_name(chain.status()))},
          {"branch", branch_json(chain.branch())},
          {"imax", chain.imax()},
          {"entries", entries}};
}

Json to_json(const Segmentation& seg) {
  Json pls = Json::array();
  for (const auto& p : seg.plateaus()) {
    pls.push_back({{"first", p.first}, {"last", p.last}, {"degree", p.degree}, {"kind", std::string(plateau_kind_name(p.kind))}});
  }
  Json pairs = Json::array();
  for (auto [l, i] : seg.successor_pairs()) {
    pairs.push_back({{"l", l},
                     {"i", i},
                     {"kind", seg.is_imm(i, l) ? "immediate" : "limit"},
                     {"level", seg.level(l, i)},
                     {"neat", seg.is_neat_pair(l, i)}});
  }
  return {{"imax", seg.imax()}, {"plateaus", pls}, {"successor_pairs", pairs}};
}

Json to_json(const ValidationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  return {{"passed", rep.passed()}, {"checks", checks}};
}

Json to_json(const RelationGen& r) {
  return {{"kind", std::string(rel_kind_name(r.kind))},
          {"target", r.target},
          {"source", r.source},
          {"b", to_json(r.b)},
          {"q", to_json(r.q)},
          {"level", r.level},
          {"r", r.r},
          {"generator", r.generator().to_string()}};
}

Json to_json(const GeneratorSet& gs) {
  Json i1 = Json::array(), i2 = Json::array();
  for (const auto& r : gs.i1) i1.push_back(to_json(r));
  for (const auto& r : gs.i2) i2.push_back(to_json(r));
  return {{"I1", i1}, {"I2", i2}};
}

Json to_json(const PlateauRel& r) { return {{"position", r.position}, {"b", to_json(r.b)}, {"a", to_json(r.a)}}; }

Json to_json(const RedundancyCert& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms) {
    terms.push_back({{"relation", {t.gen.target, t.gen.source}}, {"cofactor", to_json(t.cofactor)}});
  }
  return {{"i", c.i}, {"i2", c.i2}, {"c0", to_json(c.c0)}, {"terms", terms}, {"verified", c.verified}};
}

Json to_json(const FullExpansion& e) {
  return {{"anchor", e.anchor}, {"nu", to_json(e.nu)}, {"tuple", e.tuple}, {"terms", term_list(e.terms)}};
}

Json to_json(const Trace& t) {
  Json out = Json::array();
  for (const auto& st : t) {
    out.push_back({{"pair", {st.i, st.l}},
                   {"direction", std::string(direction_name(st.direction))},
                   {"cofactor", to_json(st.cofactor)}});
  }
  return out;
}

Json to_json(const Certificate& c) {
  Json comb = Json::array();
  for (const auto& t : c.combination) comb.push_back({{"relation", to_json(t.gen)}, {"cofactor", to_json(t.cofactor)}});
  Json i2 = nullptr;
  if (c.i2_gen) i2 = {{"relation", to_json(*c.i2_gen)}, {"cofactor", to_json(c.i2_cofactor)}};
  return {{"target", to_json(c.target)},
          {"level", c.level},
          {"i2", i2},
          {"combination", comb},
          {"denominators", c.denominators}};
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(where, "expected a rational");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

Value value_from_json(const Json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "inf") return Value::infinity();
  return Value(rational_from_json(j, where));
}

UniPoly upoly_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_upoly(j.get<std::string>());
    } catch (const Error& e) {
      bad(where, e.what());
    }
  }
  if (!j.is_array()) bad(where, "expected a coefficient array or text");
  std::vector<Rational> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(rational_from_json(j[k], sub(where, std::to_string(k))));
  return UniPoly(std::move(c));
}

XPoly xpoly_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_xpoly(j.get<std::string>());
    } catch (const Error& e) {
      bad(where, e.what());
    }
  }
  if (!j.is_array()) bad(where, "expected a term list or text");
  XPoly f;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = sub(where, std::to_string(k));
    f += XPoly::term(rational_from_json(field(j[k], "c", w), sub(w, "c")), exps_from_json(field(j[k], "e", w), sub(w, "e")));
  }
  return f;
}

KeyChain chain_from_json(const Json& j) {
  PadicContext ctx(field(j, "p", "").get<long>());
  UniPoly g = upoly_from_json(field(j, "g", ""), "/g");
  std::vector<std::pair<UniPoly, Value>> entries;
  const Json& es = field(j, "entries", "");
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string w = "/entries/" + std::to_string(k);
    entries.emplace_back(upoly_from_json(field(es[k], "q", w), w + "/q"), value_from_json(field(es[k], "gamma", w), w + "/gamma"));
  }
  return KeyChain::from_entries(ctx, g, std::move(entries), status_from(field(j, "status", "").get<std::string>(), "/status"),
                                branch_from(field(j, "branch", ""), "/branch"),
                                mode_from(field(j, "mode", "").get<std::string>(), "/mode"));
}

RelationGen relation_from_json(const Json& j) {
  RelationGen r;
  const std::string kind = field(j, "kind", "").get<std::string>();
  if (kind != "I1" && kind != "I2") bad("/kind", "unknown relation kind '" + kind + "'");
  r.kind = kind == "I1" ? RelKind::I1 : RelKind::I2;
  r.target = int_from_json(field(j, "target", ""), "/target");
  r.source = int_from_json(field(j, "source", ""), "/source");
  r.b = rational_from_json(field(j, "b", ""), "/b");
  r.q = xpoly_from_json(field(j, "q", ""), "/q");
  r.level = int_from_json(field(j, "level", ""), "/level");
  r.r = int_from_json(field(j, "r", ""), "/r");
  return r;
}

GeneratorSet generators_from_json(const Json& j) {
  GeneratorSet gs;
  for (const auto& r : field(j, "I1", "")) gs.i1.push_back(relation_from_json(r));
  for (const auto& r : field(j, "I2", "")) gs.i2.push_back(relation_from_json(r));
  return gs;
}

FullExpansion expansion_from_json(const Json& j) {
  FullExpansion e;
  e.anchor = int_from_json(field(j, "anchor", ""), "/anchor");
  e.nu = value_from_json(field(j, "nu", ""), "/nu");
  e.tuple = field(j, "tuple", "").get<std::vector<int>>();
  const Json& ts = field(j, "terms", "");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const std::string w = "/terms/" + std::to_string(k);
    ExpansionTerm t;
    t.coeff = rational_from_json(field(ts[k], "c", w), w + "/c");
    const Monomial m = exps_from_json(field(ts[k], "e", w), w + "/e");
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] != 0) t.exps[static_cast<int>(v)] = m[v];
    }
    e.terms.push_back(std::move(t));
  }
  return e;
}

Trace trace_from_json(const Json& j) {
  Trace t;
  if (!j.is_array()) bad("", "expected a trace array");
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = "/" + std::to_string(k);
    TraceStep st;
    std::tie(st.i, st.l) = pair_from(field(j[k], "pair", w), w + "/pair");
    const std::string dir = field(j[k], "direction", w).get<std::string>();
    if (dir != "building" && dir != "reduction") bad(w, "unknown direction '" + dir + "'");
    st.direction = dir == "building" ? Direction::building : Direction::reduction;
    st.cofactor = xpoly_from_json(field(j[k], "cofactor", w), w + "/cofactor");
    t.push_back(std::move(st));
  }
  return t;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.target = xpoly_from_json(field(j, "target", ""), "/target");
  c.level = int_from_json(field(j, "level", ""), "/level");
  const Json& i2 = field(j, "i2", "");
  if (!i2.is_null()) {
    c.i2_gen = relation_from_json(field(i2, "relation", "/i2"));
    c.i2_cofactor = xpoly_from_json(field(i2, "cofactor", "/i2"), "/i2/cofactor");
  }
  for (const auto& t : field(j, "combination", "")) {
    c.combination.push_back({relation_from_json(field(t, "relation", "/combination")),
                             xpoly_from_json(field(t, "cofactor", "/combination"), "/combination/cofactor")});
  }
  c.denominators = field(j, "denominators", "").get<std::vector<std::string>>();
  return c;
}

std::string dump(const Json& j) { return j.dump(2); }

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Reason::parse_error, std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace valring
