#include "valring/verify.hpp"

#include <algorithm>
#include <map>

#include "valring/errors.hpp"
#include "valring/expandval.hpp"

namespace valring {

namespace {

XPoly expansion_xpoly(const FullExpansion& e) {
  XPoly s;
  for (const auto& t : e.terms) {
    Monomial m;
    for (auto [k, x] : t.exps) {
      if (m.size() <= static_cast<std::size_t>(k)) m.resize(static_cast<std::size_t>(k) + 1, 0);
      m[static_cast<std::size_t>(k)] = x;
    }
    s += XPoly::term(t.coeff, m);
  }
  return s;
}

int max_infinite_offset(const Segmentation& seg, const XPoly& f) {
  int s = 0;
  for (int k : f.variables()) {
    if (seg.plateaus()[static_cast<std::size_t>(seg.plateau_of(k))].infinite()) s = std::max(s, seg.offset(k));
  }
  return s;
}

void merge(std::map<std::pair<int, int>, XPoly>& acc, const Trace& t) {
  for (const auto& st : t) acc[{st.l, st.i}] += st.cofactor;
}

}  // namespace

UniPoly eval_e(const KeyChain& chain, const XPoly& f) { return Rewriter(chain).eval_e(f); }

EtaValue eval_eta(const KeyChain& chain, const XPoly& f) {
  const UniPoly rem = eval_e(chain, f) % chain.generator();
  if (rem.is_zero()) return {true, Value::infinity()};
  return {false, chain.nu(rem)};
}

ValidationReport check_relations(const KeyChain& chain) {
  ValidationReport rep;
  auto& gen = rep.checks.emplace_back(ValidationCheck{"generation", true, ""});
  GeneratorSet gs;
  try {
    gs = ideal_generators(chain);
  } catch (const Error& e) {
    gen.passed = false;
    gen.witness = std::string(reason_code(e.reason())) + ": " + e.what();
    return rep;
  }
  Rewriter rw(chain);
  const PadicContext& ctx = chain.context();
  ValidationCheck kernel{"i1-kernel", true, ""}, multiple{"i2-multiple", true, ""}, mu{"mu0", true, ""},
      bpos{"b-positive", true, ""}, neat{"neat", true, ""}, dec{"b-decreasing", true, ""};
  auto fail = [](ValidationCheck& c, const RelationGen& r) {
    if (c.passed) c.witness = "(" + std::to_string(r.target) + ", " + std::to_string(r.source) + ")";
    c.passed = false;
  };
  for (const auto& r : gs.i1) {
    if (!rw.eval_e(r.generator()).is_zero()) fail(kernel, r);
    if (ctx.pval(r.b) <= Value(0)) fail(bpos, r);
  }
  for (const auto& r : gs.i2) {
    if (rw.eval_e(r.q) != chain.generator() * r.b) fail(multiple, r);
  }
  for (const auto* set : {&gs.i1, &gs.i2}) {
    for (const auto& r : *set) {
      if (r.q.is_zero() || mu0(ctx, r.q) != Value(0)) fail(mu, r);
      if (!r.q.is_zero() && !rw.is_neat(r.q).neat) fail(neat, r);
    }
  }
  const auto& pls = rw.segmentation().plateaus();
  for (std::size_t k = 1; k < gs.i2.size(); ++k) {
    const auto& a = gs.i2[k - 1];
    const auto& b = gs.i2[k];
    if (pls.size() >= 2 && pls[pls.size() - 2].infinite() && pls[pls.size() - 2].contains(a.source) &&
        !(ctx.pval(b.b) < ctx.pval(a.b))) {
      fail(dec, b);
    }
  }
  for (auto* c : {&kernel, &multiple, &mu, &bpos, &neat, &dec}) rep.checks.push_back(*c);
  return rep;
}

ProbeResult completeness_probe(const KeyChain& chain, const UniPoly& f) {
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "completeness probe of the zero polynomial");
  ProbeResult res;
  res.nu = chain.nu(f);
  if (f.is_constant()) {
    res.witness = 0;
    res.truncated = res.nu;
    return res;
  }
  for (int k = 0; k < chain.imax(); ++k) {
    if (chain.degree(k) > f.degree()) break;
    const Value t = truncate(chain, k, f);
    if (t == res.nu) {
      res.witness = k;
      res.truncated = t;
      return res;
    }
  }
  if (chain.is_complete() && chain.generator().degree() <= f.degree()) {
    // the g-expansion of f has value nu(f mod g) + infinities
    res.witness = chain.imax();
    res.truncated = res.nu;
  }
  return res;
}

XPoly integral_rep(const KeyChain& chain, const UniPoly& h) {
  if (h.degree() >= chain.generator().degree()) {
    throw Error(Reason::malformed_input, "degree of h must be below deg g");
  }
  if (h.is_zero()) return XPoly();
  const Value nu = chain.nu(h);
  if (nu < Value(0)) throw Error(Reason::malformed_input, "h(eta) is not integral");
  for (int k = 0; k < chain.imax(); ++k) {
    if (truncate(chain, k, h) != nu) continue;
    XPoly out = expansion_xpoly(full_expansion(chain, k, h));
    if (!out.is_integral()) throw Error(Reason::internal_error, "expansion at a computing position is not integral");
    return out;
  }
  throw Error(Reason::insufficient_depth, "no chain position computes nu(h)");
}

Certificate membership(const KeyChain& chain, const XPoly& f) {
  const PadicContext& ctx = chain.context();
  Rewriter rw(chain);
  const Segmentation& seg = rw.segmentation();
  Certificate cert;
  cert.target = f;
  if (f.is_zero()) return cert;
  if (mu0(ctx, f) < Value(0)) throw Error(Reason::malformed_input, "membership needs integral coefficients");
  const UniPoly tred = rw.eval_e(f);
  if (!(tred % chain.generator()).is_zero()) {
    throw Error(Reason::not_in_ideal, "g does not divide the total reduction " + tred.to_string());
  }
  const int s = max_infinite_offset(seg, f);
  const int w = static_cast<int>(seg.plateaus().size()) - 2;
  if (w < 0) throw Error(Reason::internal_error, "chain without finite entries");
  const Plateau& last = seg.plateaus()[static_cast<std::size_t>(w)];
  int i = last.last;
  if (last.infinite()) {
    i = last.first + s;
    if (i > last.last) throw Error(Reason::insufficient_depth, "level " + std::to_string(s) + " exceeds the prefix");
  }
  cert.level = s;
  const RelationGen& top = rw.relation(chain.imax(), i);

  std::map<std::pair<int, int>, XPoly> cof;
  Trace tf;
  const XPoly fs = rw.total_s_building(f, s, &tf, BuildOrder::least_first, w);
  merge(cof, tf);

  const UniPoly gi = chain.generator() * top.b;
  auto [r, rem] = tred.divmod(gi);
  if (!rem.is_zero()) throw Error(Reason::internal_error, "exact division by h_i g failed");
  const XPoly rs = rw.total_s_building(XPoly::from_univariate(r, 0), s, nullptr, BuildOrder::least_first, w);
  cert.i2_gen = top;
  cert.i2_cofactor = rs;

  // fs - Q rs lies in ker(e); its total building is the neat zero
  const XPoly d = fs - top.q * rs;
  Trace td;
  const XPoly ds = rw.total_s_building(d, s, &td, BuildOrder::least_first, w);
  if (!ds.is_zero()) throw Error(Reason::internal_error, "kernel element builds to " + ds.to_string());
  merge(cof, td);

  if (!rs.is_zero() && !rs.is_integral()) cert.denominators.push_back("I2 cofactor " + rs.to_string());
  for (auto& [key, c] : cof) {
    if (c.is_zero()) continue;
    const RelationGen& g = rw.relation(key.first, key.second);
    if (!c.is_integral()) {
      cert.denominators.push_back("cofactor of (" + std::to_string(key.first) + ", " + std::to_string(key.second) + ")");
    }
    cert.combination.push_back({g, c});
  }
  return cert;
}

std::vector<std::string> check_certificate(const Certificate& cert) {
  std::vector<std::string> bad;
  XPoly sum;
  bool integral = true;
  if (cert.i2_gen) {
    sum += cert.i2_gen->generator() * cert.i2_cofactor;
    integral = integral && cert.i2_cofactor.is_integral() && cert.i2_gen->generator().is_integral();
  }
  for (const auto& t : cert.combination) {
    sum += t.cofactor * t.gen.generator();
    integral = integral && t.cofactor.is_integral() && t.gen.generator().is_integral();
  }
  if (sum != cert.target) bad.push_back("re-expansion differs from the target");
  if (cert.denominators.empty() && !integral) bad.push_back("non-integral cofactors with an empty denominators report");
  return bad;
}

}  // namespace valring
