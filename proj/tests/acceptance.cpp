// Acceptance run: one PASS/FAIL line per criterion.
// Expected values are checked against oracles written here: direct substitution
// of the normalized keys, q-expansion truncation, and the Hensel root.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "valring/errors.hpp"
#include "valring/expandval.hpp"
#include "valring/keychain.hpp"
#include "valring/presentrel.hpp"
#include "valring/rewrite.hpp"
#include "valring/verify.hpp"
#include "valring/xpoly.hpp"

using namespace valring;

namespace {

const PadicContext& two() {
  static const PadicContext ctx(2);
  return ctx;
}

KeyChain ex(char which, int depth = 4, ChainMode mode = ChainMode::full) {
  switch (which) {
    case 'A': return build_chain(two(), UniPoly{3, 0, 1}, BranchSelector::make_unique(), depth, mode);
    case 'B': return build_chain(two(), UniPoly{1, -1, 1}, BranchSelector::make_unique(), depth, mode);
    case 'C': return build_chain(two(), UniPoly{7, 0, 1}, BranchSelector::of({{1, 0}}), depth, mode);
    default: return build_chain(two(), UniPoly{3, 8, 5, 2, 1}, BranchSelector::make_unique(), depth, mode);
  }
}

XPoly X(std::string_view s) { return parse_xpoly(s); }

struct Outcome {
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 8) failures.push_back(what);
  }
};

// ---- oracles ----

/// X_k -> Qtilde_k by plain substitution.
UniPoly substitute(const KeyChain& chain, const XPoly& f) {
  UniPoly out;
  for (const auto& [m, c] : f.terms()) {
    UniPoly t = UniPoly::constant(c);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] > 0) t *= chain.normalized(static_cast<int>(k)).pow(static_cast<unsigned>(m[k]));
    }
    out += t;
  }
  return out;
}

/// min_j nu(f_j) + j gamma_i over the Q_i-expansion of f.
Value q_truncation(const KeyChain& chain, int i, const UniPoly& f) {
  const UniPoly& q = i == chain.imax() ? chain.generator() : chain.key(i);
  NuOracle nu = chain.oracle();
  Value best = Value::infinity();
  UniPoly rest = f;
  for (long j = 0; !rest.is_zero(); ++j) {
    auto [quo, rem] = rest.divmod(q);
    if (!rem.is_zero()) {
      const Value v = nu(rem);
      if (j == 0 || chain.gamma(i).is_finite()) {
        const Value term = j == 0 ? v : Value(v.rational() + chain.gamma(i).rational() * Rational(j));
        best = min(best, term);
      }
    }
    rest = quo;
  }
  return best;
}

int n_plus(const KeyChain& chain, int n) {
  for (int k = 0; k < chain.size(); ++k) {
    const int d = k == chain.imax() ? chain.generator().degree() : chain.degree(k);
    if (d > n) return d;
  }
  return chain.generator().degree();
}

XPoly expansion_poly(const FullExpansion& e) {
  XPoly s;
  for (const auto& t : e.terms) {
    XPoly m = XPoly::constant(t.coeff);
    for (auto [k, x] : t.exps) m = m * XPoly::var(k, x);
    s += m;
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

UniPoly random_poly(std::mt19937_64& rng, int deg, long height) {
  std::uniform_int_distribution<long> coef(-height, height);
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) c.push_back(coef(rng));
  return UniPoly(c);
}

XPoly random_xpoly(std::mt19937_64& rng, const std::vector<int>& vars, int terms, int max_exp, long height) {
  std::uniform_int_distribution<long> coef(-height, height);
  std::uniform_int_distribution<int> e(0, max_exp);
  XPoly f;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int k : vars) {
      if (m.size() <= static_cast<std::size_t>(k)) m.resize(static_cast<std::size_t>(k) + 1, 0);
      m[static_cast<std::size_t>(k)] = e(rng);
    }
    f += XPoly::term(coef(rng), m);
  }
  return f;
}

std::vector<XPoly> generators_of(const std::vector<RelationGen>& rs) {
  std::vector<XPoly> out;
  for (const auto& r : rs) out.push_back(r.generator());
  return out;
}

bool same_set(std::vector<XPoly> got, std::vector<XPoly> want) {
  auto key = [](const XPoly& a, const XPoly& b) { return a.to_string() < b.to_string(); };
  std::sort(got.begin(), got.end(), key);
  std::sort(want.begin(), want.end(), key);
  return got == want;
}

struct Context {
  char name;
  std::vector<int> vars;  // X-variables below imax
};

const std::vector<Context>& contexts() {
  static const std::vector<Context> all{{'A', {0, 1}}, {'B', {0}}, {'C', {0, 1, 2, 3}}, {'D', {0, 1}}};
  return all;
}

void relations_vanish(Outcome& o, const KeyChain& chain, const GeneratorSet& gs) {
  for (const auto& r : gs.i1) {
    o.expect(substitute(chain, r.generator()).is_zero(), "I1 generator " + r.generator().to_string() + " does not vanish");
  }
  for (const auto& r : gs.i2) {
    o.expect(substitute(chain, r.q) == chain.generator() * r.b, "I2 body " + r.generator().to_string() + " is not b*g");
    o.expect((substitute(chain, r.generator()) % chain.generator()).is_zero(), "I2 generator not divisible by g");
  }
}

// ---- criteria ----

Outcome c1() {
  Outcome o;
  const KeyChain b = ex('B');
  const GeneratorSet gs = ideal_generators(b);
  o.expect(gs.i1.empty(), "I1 not empty");
  o.expect(same_set(generators_of(gs.i2), {X("X0^2 - X0 + 1")}), "I2 differs");
  if (gs.i2.size() == 1) o.expect(substitute(b, gs.i2[0].generator()) == b.generator(), "evaluation is not g");
  relations_vanish(o, b, gs);
  return o;
}

Outcome c2() {
  Outcome o;
  const KeyChain a = ex('A');
  o.expect(a.size() == 3 && a.key(0) == UniPoly{0, 1} && a.key(1) == UniPoly{1, 1} && a.generator() == UniPoly{3, 0, 1},
           "chain keys");
  o.expect(a.size() == 3 && a.gamma(0) == Value(0) && a.gamma(1) == Value(1) && a.gamma(2).is_infinite(), "gammas");
  for (int i = 0; i + 1 < a.size(); ++i) o.expect(a.nu(a.key(i)) == a.gamma(i), "gamma disagrees with the oracle");
  const GeneratorSet gs = ideal_generators(a);
  o.expect(same_set(generators_of(gs.i1), {X("2*X1 - X0 - 1")}), "I1 differs");
  o.expect(same_set(generators_of(gs.i2), {X("X1^2 - X1 + 1")}), "I2 differs");
  relations_vanish(o, a, gs);
  const KeyChain ac = ex('A', 4, ChainMode::collapsed);
  const GeneratorSet gc = ideal_generators(ac);
  o.expect(gc.i1.empty(), "collapsed I1 not empty");
  o.expect(same_set(generators_of(gc.i2), {X("X0^2 - X0 + 1")}), "collapsed I2 differs");
  relations_vanish(o, ac, gc);
  return o;
}

Outcome c3() {
  Outcome o;
  const KeyChain d = ex('D');
  o.expect(d.size() == 3 && d.key(0) == UniPoly{0, 1} && d.key(1) == UniPoly{1, 1, 1}, "chain keys");
  o.expect(d.size() == 3 && d.gamma(0) == Value(0) && d.gamma(1) == Value(1) && d.gamma(2).is_infinite(), "gammas");
  const GeneratorSet gs = ideal_generators(d);
  o.expect(same_set(generators_of(gs.i1), {X("2*X1 - X0^2 - X0 - 1")}), "I1 differs");
  o.expect(same_set(generators_of(gs.i2), {X("X1^2 + X1 + X0")}), "I2 differs");
  relations_vanish(o, d, gs);
  return o;
}

Outcome c4() {
  Outcome o;
  const KeyChain c = ex('C');
  const std::vector<UniPoly> keys{{0, 1}, {1, 1}, {-3, 1}, {-11, 1}};
  const std::vector<long> gam{0, 2, 3, 6};
  o.expect(c.size() == 4 && c.status() == ChainStatus::prefix, "prefix shape");
  const long N = 64;
  const ResidueClass root = hensel_root(two(), c.generator(), {3, 3}, N);
  for (int i = 0; i < std::min(c.size(), 4); ++i) {
    o.expect(c.key(i) == keys[static_cast<std::size_t>(i)], "key " + std::to_string(i));
    o.expect(c.gamma(i) == Value(gam[static_cast<std::size_t>(i)]), "gamma " + std::to_string(i));
    // value of the key at the Hensel root, certified below the precision
    const Integer at = c.key(i).coeff(0).get_num() + root.rep;
    const long v = at == 0 ? N : two().pval(Integer(at));
    o.expect(v < N - 2 && Value(v) == c.gamma(i), "Hensel value at " + std::to_string(i));
  }
  const GeneratorSet gs = ideal_generators(c);
  o.expect(same_set(generators_of(gs.i1), {X("4*X1 - X0 - 1"), X("2*X2 - X1 + 1"), X("8*X3 - X2 + 1")}), "I1 differs");
  o.expect(same_set(generators_of(gs.i2), {X("X0^2 + 7"), X("2*X1^2 - X1 + 1"), X("4*X2^2 + 3*X2 + 1"),
                                           X("32*X3^2 + 11*X3 + 1")}),
           "I2 differs");
  relations_vanish(o, c, gs);
  const std::vector<long> vb{0, -3, -4, -7};
  for (std::size_t k = 0; k < gs.i2.size() && k < vb.size(); ++k) {
    o.expect(two().pval(gs.i2[k].b) == Value(vb[k]), "v(b) at source " + std::to_string(gs.i2[k].source));
  }
  // Q_{imax,2} = 8 Q_{imax,3} - (4X2 + 32X3 + 7)(8X3 - X2 + 1)
  const XPoly lhs = X("4*X2^2 + 3*X2 + 1");
  const XPoly rhs = Rational(8) * X("32*X3^2 + 11*X3 + 1") - X("4*X2 + 32*X3 + 7") * X("8*X3 - X2 + 1");
  o.expect(lhs == rhs, "redundancy identity by expansion");
  const RedundancyCert rc = redundancy_cofactor(c, 2, 3);
  o.expect(rc.verified && rc.c0 == Rational(8), "redundancy certificate");
  XPoly sum = rc.c0 * relation(c, c.imax(), 3).generator();
  for (const auto& t : rc.terms) sum += t.cofactor * t.gen.generator();
  o.expect(sum == lhs, "certificate re-expansion");
  return o;
}


Outcome c5() {
  Outcome o;
  std::mt19937_64 rng(5005);
  int strict_chains = 0;
  for (const auto& ctx : contexts()) {
    const KeyChain chain = ex(ctx.name);
    NuOracle nu = chain.oracle();
    const int n = chain.generator().degree();
    const int last = chain.imax() - 1;
    std::uniform_int_distribution<int> deg(0, n);
    bool strict = false;
    for (int t = 0; t < 200; ++t) {
      const UniPoly f = random_poly(rng, deg(rng), 1L << 16);
      if (f.is_zero()) continue;
      const Value vf = nu(f);
      Value prev = Value(-1000000);
      for (int i = 0; i <= last; ++i) {
        const Value vi = q_truncation(chain, i, f);
        o.expect(vi == truncate(chain, i, f), std::string(1, ctx.name) + ": truncation differs from the oracle");
        o.expect(prev <= vi && vi <= vf, std::string(1, ctx.name) + ": monotonicity " + f.to_string());
        if (i > 0 && prev < vi) strict = true;
        prev = vi;
      }
      if (prev < vf) strict = true;
    }
    o.expect(strict, std::string(1, ctx.name) + ": no strict witness");
    strict_chains += strict;
  }
  o.note = std::to_string(strict_chains) + "/4 chains with strict witnesses";
  return o;
}

Outcome c6() {
  Outcome o;
  std::mt19937_64 rng(6006);
  int checked = 0;
  for (const auto& ctx : contexts()) {
    const KeyChain chain = ex(ctx.name);
    const Segmentation seg(chain);
    const int n = chain.generator().degree();
    std::uniform_int_distribution<int> deg(0, 2 * n);
    std::uniform_int_distribution<int> pos(0, chain.imax() - 1);
    const std::string tag(1, ctx.name);
    for (int t = 0; t < 200; ++t) {
      const UniPoly f = random_poly(rng, deg(rng), 1L << 16);
      if (f.is_zero()) continue;
      const int i = pos(rng);
      const FullExpansion e = full_expansion(chain, i, f);
      ++checked;
      const XPoly ep = expansion_poly(e);
      o.expect(substitute(chain, ep) == f, tag + ": evaluation identity");
      Value m = Value::infinity();
      for (const auto& term : e.terms) m = min(m, two().pval(term.coeff));
      o.expect(m == q_truncation(chain, i, f), tag + ": minimum coefficient value");
      std::map<int, int> by_degree;
      for (const auto& term : e.terms) {
        for (auto [k, x] : term.exps) {
          o.expect(k <= i, tag + ": position above the anchor");
          if (k < i) {
            const int dk = chain.degree(k);
            o.expect(x < n_plus(chain, dk) / dk, tag + ": exponent bound");
          }
          auto [it, fresh] = by_degree.emplace(chain.degree(k), k);
          o.expect(fresh || it->second == k, tag + ": two positions of one degree");
        }
      }
      o.expect(expansion_poly(expansion_from_tuple(chain, i, f, e.tuple)) == ep, tag + ": tuple reproduction");
    }
  }
  o.note = std::to_string(checked) + " expansions";
  return o;
}

Outcome c7_for(const Context& ctx) {
  Outcome o;
  std::mt19937_64 rng(7000 + static_cast<unsigned>(ctx.name));
  const KeyChain chain = ex(ctx.name);
  const Rewriter rw(chain);
  const Segmentation& seg = rw.segmentation();
  const std::string tag(1, ctx.name);
  int done = 0;
  std::uniform_int_distribution<std::size_t> nv(1, ctx.vars.size());
  while (done < 200) {
    const std::vector<int> vars(ctx.vars.begin(), ctx.vars.begin() + static_cast<long>(nv(rng)));
    const XPoly f = random_xpoly(rng, vars, 3, 3, 50);
    if (f.is_zero() || f.top_variable() < 0) continue;
    ++done;
    const int s = max_infinite_offset(seg, f);
    const int through = seg.plateau_of(f.top_variable());
    const auto win = rw.window(s, through);
    for (int i : win) {
      const auto l = rw.target(i, win);
      if (!l || f.deg_in(i) < rw.relation(*l, i).r) continue;
      const XPoly b = rw.building(f, i, *l);
      o.expect(rw.prec_compare(b, f) == Order::less, tag + ": building does not decrease " + f.to_string());
      o.expect(mu0(two(), b) >= mu0(two(), f), tag + ": mu0 decreased");
    }
    Trace t;
    const XPoly fs = rw.total_s_building(f, s, &t);
    const NeatInfo info = rw.is_neat(fs);
    o.expect(info.neat && info.level <= s, tag + ": result not neat of level <= s");
    XPoly sum;
    for (const auto& st : t) sum += st.cofactor * rw.relation(st.l, st.i).generator();
    o.expect(f == fs + sum, tag + ": trace re-expansion");
    o.expect(mu0(two(), fs) >= mu0(two(), f), tag + ": mu0 decreased over the total building");
    const UniPoly ef = substitute(chain, f);
    if (fs.top_variable() >= 0 && !ef.is_zero()) {
      const int pos = rw.level_position(seg.plateau_of(fs.top_variable()), s);
      o.expect(mu0(two(), fs) == q_truncation(chain, pos, ef), tag + ": level-value identity");
    }
    o.expect(rw.total_s_building(f, s, nullptr, BuildOrder::greatest_first) == fs, tag + ": building order changes result");
    Trace tr;
    const UniPoly red = rw.total_reduction(f, &tr);
    o.expect(red == ef, tag + ": total reduction differs from substitution");
  }
  return o;
}

Outcome c8_for(const Context& ctx) {
  Outcome o;
  std::mt19937_64 rng(8000 + static_cast<unsigned>(ctx.name));
  const KeyChain chain = ex(ctx.name);
  const std::string tag(1, ctx.name);
  const GeneratorSet gs = ideal_generators(chain);
  std::vector<XPoly> gens = generators_of(gs.i1);
  for (const auto& g : generators_of(gs.i2)) gens.push_back(g);
  const std::vector<int> vars(ctx.vars.begin(), ctx.vars.begin() + std::min<long>(3, static_cast<long>(ctx.vars.size())));
  int accepted = 0, rejected = 0, with_denominators = 0;
  for (int t = 0; t < 100; ++t) {
    XPoly f;
    for (int k = 0; k < 2; ++k) f += random_xpoly(rng, vars, 2, 2, 20) * gens[rng() % gens.size()];
    try {
      const Certificate cert = membership(chain, f);
      XPoly sum;
      if (cert.i2_gen) sum += cert.i2_gen->generator() * cert.i2_cofactor;
      for (const auto& term : cert.combination) sum += term.cofactor * term.gen.generator();
      o.expect(sum == f, tag + ": certificate does not re-expand");
      o.expect(check_certificate(cert).empty(), tag + ": certificate checker");
      if (!cert.denominators.empty()) ++with_denominators;
      ++accepted;
    } catch (const Error& e) {
      o.expect(false, tag + ": membership failed: " + e.what());
    }
  }
  int attempts = 0;
  while (rejected < 100 && attempts < 1000) {
    ++attempts;
    const XPoly f = random_xpoly(rng, vars, 3, 2, 20);
    if (f.is_zero() || (substitute(chain, f) % chain.generator()).is_zero()) continue;
    ++rejected;
    try {
      membership(chain, f);
      o.expect(false, tag + ": accepted a non-member");
    } catch (const Error& e) {
      o.expect(e.reason() == Reason::not_in_ideal, tag + ": wrong rejection reason");
    }
  }
  o.expect(rejected == 100, tag + ": too few non-members drawn");
  if (chain.is_complete()) o.expect(with_denominators == 0, tag + ": denominators reported on a finite chain");
  o.note = std::to_string(accepted) + " certified, " + std::to_string(rejected) + " rejected, " +
           std::to_string(with_denominators) + " with denominators";
  return o;
}

Outcome c9() {
  Outcome o;
  std::mt19937_64 rng(9009);
  for (char w : {'A', 'B', 'D'}) {
    const KeyChain chain = ex(w);
    NuOracle nu = chain.oracle();
    const int n = chain.generator().degree();
    std::uniform_int_distribution<int> deg(0, n - 1), shift(0, 3);
    int done = 0;
    while (done < 100) {
      UniPoly h = random_poly(rng, deg(rng), 1L << 12);
      if (h.is_zero()) continue;
      const Value v = nu(h);
      h *= two().power(shift(rng) - v.to_long());
      if (nu(h) < Value(0)) continue;
      ++done;
      const XPoly rep = integral_rep(chain, h);
      o.expect(rep.is_integral(), std::string(1, w) + ": non-integral representation");
      o.expect(((substitute(chain, rep) - h) % chain.generator()).is_zero(), std::string(1, w) + ": roundtrip mod g");
    }
  }
  return o;
}

Outcome c10() {
  Outcome o;
  std::mt19937_64 rng(10010);
  for (char w : {'A', 'B', 'D'}) {
    const KeyChain chain = ex(w);
    const int n = chain.generator().degree();
    std::uniform_int_distribution<int> deg(0, 2 * n);
    int done = 0;
    while (done < 200) {
      const UniPoly f = random_poly(rng, deg(rng), 1L << 16);
      if (f.is_zero()) continue;
      ++done;
      const ProbeResult r = completeness_probe(chain, f);
      if (!r.witness) {
        o.expect(false, std::string(1, w) + ": no witness for " + f.to_string());
        continue;
      }
      const int q = *r.witness;
      const int dq = q == chain.imax() ? n : chain.degree(q);
      o.expect(dq <= std::max(f.degree(), 1), std::string(1, w) + ": witness degree");
      o.expect(q_truncation(chain, q, f) == chain.oracle()(f), std::string(1, w) + ": witness does not compute nu");
    }
  }
  const UniPoly f = UniPoly{-75, 1};
  const ProbeResult c4 = completeness_probe(ex('C', 4), f);
  o.expect(!c4.witness, "depth 4 found a witness for x - 75");
  const KeyChain c6ch = ex('C', 6);
  const ProbeResult c6 = completeness_probe(c6ch, f);
  o.expect(c6.witness.has_value(), "depth 6 found no witness for x - 75");
  if (c6.witness) o.expect(q_truncation(c6ch, *c6.witness, f) == Value(8), "depth 6 witness value");
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double limit;  // seconds
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  std::vector<Criterion> all{
      {1, "presentation of x^2 - x + 1", 1.0, c1},
      {2, "presentation of x^2 + 3, full and collapsed", 1.0, c2},
      {3, "presentation of the quartic chain D", 1.0, c3},
      {4, "x^2 + 7 prefix: Hensel values, redundancy", 2.0, c4},
      {5, "truncation monotonicity", 0.0, c5},
      {6, "full-expansion contract", 0.0, c6},
  };
  for (const auto& ctx : contexts()) {
    all.push_back({7, std::string("rewriting suite on chain ") + ctx.name, 30.0, [ctx] { return c7_for(ctx); }});
  }
  for (const auto& ctx : contexts()) {
    all.push_back({8, std::string("membership certificates on chain ") + ctx.name, 60.0, [ctx] { return c8_for(ctx); }});
  }
  all.push_back({9, "integral representations", 0.0, c9});
  all.push_back({10, "completeness probe", 0.0, c10});

  std::map<int, bool> verdict;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) o.failures.push_back("runtime above " + std::to_string(c.limit) + " s");
    const bool ok = o.failures.empty();
    auto [it, fresh] = verdict.emplace(c.id, ok);
    if (!fresh) it->second = it->second && ok;
    std::printf("%s  criterion %2d  %-44s %8.3f s%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                o.note.empty() ? "" : "  ", o.note.c_str());
    for (const auto& f : o.failures) std::printf("        %s\n", f.c_str());
  }
  int passed = 0;
  for (const auto& [id, ok] : verdict) passed += ok;
  std::printf("%d/%zu criteria passed\n", passed, verdict.size());
  return passed == static_cast<int>(verdict.size()) ? 0 : 1;
}
