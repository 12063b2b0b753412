#include "valring/cli.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "valring/errors.hpp"
#include "valring/expandval.hpp"
#include "valring/presentrel.hpp"
#include "valring/rewrite.hpp"
#include "valring/verify.hpp"

namespace valring {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(Reason::parse_error, "config" + where + ": " + what);
}

void only_fields(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; })) {
      bad(where, "unknown field '" + it.key() + "'");
    }
  }
}

int nat(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long>() < 0) bad(where, "expected a natural number");
  return j.get<int>();
}

BranchSelector branch_from(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "unique") bad("/branch", "expected \"unique\" or a list of choices");
    return BranchSelector::make_unique();
  }
  if (!j.is_array()) bad("/branch", "expected \"unique\" or a list of choices");
  std::vector<BranchChoice> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = "/branch/" + std::to_string(k);
    if (!j[k].is_array() || j[k].size() != 2) bad(w, "expected [slope, factor]");
    out.push_back({static_cast<std::size_t>(nat(j[k][0], w)), static_cast<std::size_t>(nat(j[k][1], w))});
  }
  return BranchSelector::of(std::move(out));
}

KeyChain make_chain(const JobConfig& cfg) {
  return build_chain(PadicContext(cfg.p), cfg.g, cfg.branch, cfg.depth, cfg.mode);
}

const UniPoly& need_poly(const JobConfig& cfg) {
  if (!cfg.payload.poly) throw Error(Reason::malformed_input, "payload.poly is required");
  return *cfg.payload.poly;
}

const XPoly& need_xpoly(const JobConfig& cfg) {
  if (!cfg.payload.xpoly) throw Error(Reason::malformed_input, "payload.xpoly is required");
  return *cfg.payload.xpoly;
}

Json with_trace(Json doc, const Trace& t, bool on) {
  if (on) doc["trace"] = to_json(t);
  return doc;
}

Json cmd_chain(const JobConfig& cfg) {
  const KeyChain chain = make_chain(cfg);
  return {{"chain", to_json(chain)}, {"segmentation", to_json(Segmentation(chain))}, {"validation", to_json(check_relations(chain))}};
}

Json cmd_present(const JobConfig& cfg) {
  const KeyChain chain = make_chain(cfg);
  Json pr = Json::array();
  const Segmentation seg(chain);
  for (int i = 0; i < chain.imax(); ++i) {
    const Plateau& pl = seg.plateaus()[static_cast<std::size_t>(seg.plateau_of(i))];
    if (pl.infinite() && i < pl.last) pr.push_back(to_json(plateau_relation(chain, i)));
  }
  return {{"generators", to_json(ideal_generators(chain))}, {"plateau_relations", pr}};
}

Json cmd_eval(const JobConfig& cfg) {
  const KeyChain chain = make_chain(cfg);
  const UniPoly& f = need_poly(cfg);
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "eval of the zero polynomial");
  Json table = Json::array();
  for (int i = 0; i < chain.imax(); ++i) table.push_back({{"position", i}, {"mu", to_json(chain.mu(i, f))}});
  const OracleValue ov = chain.oracle().evaluate(f);
  const ProbeResult probe = completeness_probe(chain, f);
  Json witness = nullptr;
  if (probe.witness) witness = *probe.witness;
  return {{"poly", to_json(f)},
          {"mu", table},
          {"nu", to_json(ov.value)},
          {"method", std::string(method_name(ov.method))},
          {"witness", witness}};
}

Json cmd_expand(const JobConfig& cfg) {
  const KeyChain chain = make_chain(cfg);
  const UniPoly& f = need_poly(cfg);
  const int i = cfg.payload.position.value_or(chain.imax() - 1);
  return {{"expansion", to_json(full_expansion(chain, i, f))}};
}

Json cmd_build(const JobConfig& cfg, bool trace) {
  const Rewriter rw(make_chain(cfg));
  const XPoly& f = need_xpoly(cfg);
  Trace t;
  XPoly out = cfg.payload.pair ? rw.building(f, cfg.payload.pair->first, cfg.payload.pair->second, &t)
                               : rw.total_s_building(f, cfg.payload.s, &t);
  return with_trace({{"input", to_json(f)}, {"result", to_json(out)}, {"text", out.to_string()}}, t, trace);
}

Json cmd_reduce(const JobConfig& cfg, bool trace) {
  const Rewriter rw(make_chain(cfg));
  const XPoly& f = need_xpoly(cfg);
  Trace t;
  if (cfg.payload.pair) {
    XPoly out = rw.reduction(f, cfg.payload.pair->first, cfg.payload.pair->second, &t);
    return with_trace({{"input", to_json(f)}, {"result", to_json(out)}, {"text", out.to_string()}}, t, trace);
  }
  UniPoly out = rw.total_reduction(f, &t);
  return with_trace({{"input", to_json(f)}, {"result", to_json(out)}, {"text", out.to_string()}}, t, trace);
}

Json cmd_member(const JobConfig& cfg) {
  const KeyChain chain = make_chain(cfg);
  const Certificate cert = membership(chain, need_xpoly(cfg));
  Json violations = check_certificate(cert);
  return {{"certificate", to_json(cert)}, {"violations", violations}};
}

struct Suite {
  Json entries = Json::array();
  bool ok = true;

  void add(const std::string& name, int trials, const std::string& witness) {
    entries.push_back({{"name", name}, {"trials", trials}, {"passed", witness.empty()}, {"witness", witness}});
    ok = ok && witness.empty();
  }
};

XPoly random_x(std::mt19937_64& rng, int nvars, int terms, int max_exp, long height) {
  XPoly f;
  for (int t = 0; t < terms; ++t) {
    Monomial m(static_cast<std::size_t>(nvars), 0);
    for (auto& e : m) e = static_cast<int>(rng() % static_cast<unsigned>(max_exp + 1));
    const long c = static_cast<long>(rng() % static_cast<unsigned long>(2 * height + 1)) - height;
    f += XPoly::term(Rational(c), m);
  }
  return f;
}

UniPoly random_u(std::mt19937_64& rng, int deg, long height) {
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) c.emplace_back(static_cast<long>(rng() % static_cast<unsigned long>(2 * height + 1)) - height);
  return UniPoly(std::move(c));
}

Json cmd_check(const JobConfig& cfg, std::uint64_t seed) {
  const KeyChain chain = make_chain(cfg);
  const Rewriter rw(chain);
  const PadicContext& ctx = chain.context();
  std::mt19937_64 rng(seed);
  Suite suite;
  const ValidationReport rep = check_relations(chain);
  suite.add("relations", 1, rep.passed() ? "" : "relation report failed");

  // finite chains only expose positions below imax as variables
  const int nvars = std::min(chain.imax(), 3);
  const int n = chain.generator().degree();

  std::string w;
  int trials = 0;
  for (int t = 0; t < 20 && w.empty(); ++t) {
    UniPoly f = random_u(rng, 1 + static_cast<int>(rng() % static_cast<unsigned>(2 * n)), 50);
    if (f.is_zero()) continue;
    for (int i = 0; i < chain.imax() && w.empty(); ++i) {
      auto v = check_full_expansion(chain, full_expansion(chain, i, f), f);
      if (!v.empty()) w = f.to_string() + " at " + std::to_string(i) + ": " + v.front();
    }
    ++trials;
  }
  suite.add("full-expansion", trials, w);

  w.clear();
  trials = 0;
  for (int t = 0; t < 20 && w.empty(); ++t) {
    XPoly f = random_x(rng, nvars, 3, 2, 20);
    if (f.is_zero()) continue;
    Trace tr;
    XPoly fs;
    try {
      int s = 0;
      const Segmentation& seg = rw.segmentation();
      for (int k : f.variables()) {
        if (seg.plateaus()[static_cast<std::size_t>(seg.plateau_of(k))].infinite()) s = std::max(s, seg.offset(k));
      }
      fs = rw.total_s_building(f, s, &tr);
    } catch (const Error& e) {
      if (e.reason() == Reason::insufficient_depth) continue;
      throw;
    }
    ++trials;
    if (f - fs != rw.replay(tr)) w = f.to_string() + ": replay differs";
    else if (!rw.is_neat(fs).neat) w = f.to_string() + ": result not neat";
    else if (mu0(ctx, fs) < mu0(ctx, f)) w = f.to_string() + ": mu0 decreased";
    else if (rw.eval_e(fs) != rw.eval_e(f)) w = f.to_string() + ": e changed";
  }
  suite.add("total-building", trials, w);

  w.clear();
  trials = 0;
  const GeneratorSet gs = ideal_generators(chain);
  std::vector<XPoly> gens;
  for (const auto* set : {&gs.i1, &gs.i2}) {
    for (const auto& r : *set) {
      if (r.generator().top_variable() < nvars) gens.push_back(r.generator());
    }
  }
  for (int t = 0; t < 10 && w.empty() && !gens.empty(); ++t) {
    XPoly f;
    for (int k = 0; k < 2; ++k) f += random_x(rng, nvars, 2, 1, 10) * gens[rng() % gens.size()];
    if (f.is_zero()) continue;
    ++trials;
    const Certificate cert = membership(chain, f);
    auto v = check_certificate(cert);
    if (!v.empty()) w = f.to_string() + ": " + v.front();
    else if (!cert.denominators.empty()) w = f.to_string() + ": non-integral cofactors";
  }
  suite.add("membership", trials, w);

  w.clear();
  const std::string a = dump(to_json(gs));
  const std::string b = dump(to_json(generators_from_json(parse_document(a))));
  const std::string c = dump(to_json(chain));
  const std::string d = dump(to_json(chain_from_json(parse_document(c))));
  if (a != b) w = "generator set";
  else if (c != d) w = "chain";
  suite.add("roundtrip", 2, w);

  return {{"seed", seed}, {"passed", suite.ok}, {"checks", suite.entries}, {"validation", to_json(rep)}};
}

}  // namespace

JobConfig parse_config(const Json& j) {
  only_fields(j, "", {"p", "g", "branch", "depth", "mode", "seed", "payload"});
  JobConfig cfg;
  auto p = j.find("p");
  if (p == j.end() || !p->is_number_integer()) bad("/p", "expected an integer prime");
  cfg.p = p->get<long>();
  auto g = j.find("g");
  if (g == j.end()) bad("/g", "missing field");
  cfg.g = upoly_from_json(*g, "config/g");
  if (auto it = j.find("branch"); it != j.end()) cfg.branch = branch_from(*it);
  if (auto it = j.find("depth"); it != j.end()) cfg.depth = nat(*it, "/depth");
  if (auto it = j.find("mode"); it != j.end()) {
    const std::string m = it->is_string() ? it->get<std::string>() : "";
    if (m == "full") cfg.mode = ChainMode::full;
    else if (m == "collapsed") cfg.mode = ChainMode::collapsed;
    else bad("/mode", "expected \"full\" or \"collapsed\"");
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) bad("/seed", "expected a natural number");
    cfg.seed = it->get<std::uint64_t>();
  }
  if (auto it = j.find("payload"); it != j.end()) {
    const Json& pl = *it;
    only_fields(pl, "/payload", {"poly", "xpoly", "position", "pair", "s"});
    if (auto f = pl.find("poly"); f != pl.end()) cfg.payload.poly = upoly_from_json(*f, "config/payload/poly");
    if (auto f = pl.find("xpoly"); f != pl.end()) cfg.payload.xpoly = xpoly_from_json(*f, "config/payload/xpoly");
    if (auto f = pl.find("position"); f != pl.end()) cfg.payload.position = nat(*f, "/payload/position");
    if (auto f = pl.find("s"); f != pl.end()) cfg.payload.s = nat(*f, "/payload/s");
    if (auto f = pl.find("pair"); f != pl.end()) {
      if (!f->is_array() || f->size() != 2) bad("/payload/pair", "expected [i, l]");
      cfg.payload.pair = std::make_pair(nat((*f)[0], "/payload/pair/0"), nat((*f)[1], "/payload/pair/1"));
    }
  }
  return cfg;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"chain", "present", "eval", "expand", "build", "reduce", "member", "check"};
  return names;
}

RunResult run(const std::string& command, const Json& config, const RunOptions& opts) {
  RunResult res;
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
      throw Error(Reason::malformed_input, "unknown command '" + command + "'");
    }
    const JobConfig cfg = parse_config(config);
    Json body;
    if (command == "chain") body = cmd_chain(cfg);
    else if (command == "present") body = cmd_present(cfg);
    else if (command == "eval") body = cmd_eval(cfg);
    else if (command == "expand") body = cmd_expand(cfg);
    else if (command == "build") body = cmd_build(cfg, opts.trace);
    else if (command == "reduce") body = cmd_reduce(cfg, opts.trace);
    else if (command == "member") body = cmd_member(cfg);
    else body = cmd_check(cfg, opts.seed.value_or(cfg.seed));
    res.document = {{"command", command}, {"result", body}};
    if (command == "check" && !body["passed"].get<bool>()) res.status = 2;
  } catch (const Error& e) {
    res.status = is_mathematical(e.reason()) ? 2 : 1;
    res.document = {{"error", {{"reason", std::string(reason_code(e.reason()))}, {"message", e.what()}}}};
  } catch (const Json::exception& e) {
    res.status = 1;
    res.document = {{"error", {{"reason", std::string(reason_code(Reason::parse_error))}, {"message", e.what()}}}};
  }
  return res;
}

}  // namespace valring
