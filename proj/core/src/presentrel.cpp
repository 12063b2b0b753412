#include "valring/presentrel.hpp"

#include <algorithm>

#include "valring/errors.hpp"
#include "valring/rewrite.hpp"

namespace valring {

namespace {

XPoly to_xpoly(const FullExpansion& e) {
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

std::vector<RelationGen> filter(const std::vector<RelationGen>& v, bool by_target, int bound, bool strict) {
  std::vector<RelationGen> out;
  for (const auto& r : v) {
    const int k = by_target ? r.target : r.source;
    if (strict ? k < bound : k <= bound) out.push_back(r);
  }
  return out;
}

}  // namespace

std::string_view rel_kind_name(RelKind k) { return k == RelKind::I1 ? "I1" : "I2"; }

XPoly RelationGen::generator() const {
  if (kind == RelKind::I2) return q;
  return XPoly::var(target) * b - q;
}

XPoly RelationGen::body() const { return q * (1 / b); }

std::vector<RelationGen> GeneratorSet::i1_upto(int l) const { return filter(i1, true, l, false); }
std::vector<RelationGen> GeneratorSet::i1_below(int l) const { return filter(i1, true, l, true); }
std::vector<RelationGen> GeneratorSet::i2_upto(int l) const { return filter(i2, false, l, false); }
std::vector<RelationGen> GeneratorSet::i2_below(int l) const { return filter(i2, false, l, true); }

RelationGen relation(const KeyChain& chain, int l, int i) {
  Segmentation seg(chain);
  if (!seg.is_succ(i, l)) {
    throw Error(Reason::invalid_pair, "(" + std::to_string(l) + ", " + std::to_string(i) + ") is not a successor pair");
  }
  if (!seg.is_neat_pair(l, i)) {
    throw Error(Reason::non_neat_pair, "(" + std::to_string(l) + ", " + std::to_string(i) + ") is not neat");
  }
  RelationGen rel;
  rel.target = l;
  rel.source = i;
  rel.level = seg.level(l, i);
  const bool top = l == chain.imax();
  rel.kind = top ? RelKind::I2 : RelKind::I1;
  const UniPoly& f = top ? chain.generator() : chain.normalized(l);
  const int dl = top ? chain.generator().degree() : chain.degree(l);
  rel.r = dl / chain.degree(i);
  FullExpansion e = full_expansion(chain, i, f);
  XPoly s = to_xpoly(e);
  if (top) {
    if (!e.nu.is_finite() || !e.nu.is_integer()) {
      throw Error(Reason::ramified_branch, "truncated value of g is " + to_string(e.nu));
    }
    rel.b = chain.context().power(-e.nu.to_long());
  } else {
    const Rational pure = s.coeff(XPoly::var(i, rel.r).terms().begin()->first);
    if (pure == 0 || chain.context().pval(pure) != e.nu) {
      throw Error(Reason::not_strongly_monic, "position " + std::to_string(l) + " is not strongly monic over " +
                                                  std::to_string(i));
    }
    rel.b = 1 / pure;
  }
  rel.q = s * rel.b;
  return rel;
}

GeneratorSet ideal_generators(const KeyChain& chain) {
  Segmentation seg(chain);
  GeneratorSet out;
  for (auto [l, i] : seg.successor_pairs()) {
    if (!seg.is_neat_pair(l, i)) continue;
    if (l == chain.imax()) {
      out.i2.push_back(relation(chain, l, i));
    } else {
      out.i1.push_back(relation(chain, l, i));
    }
  }
  std::sort(out.i2.begin(), out.i2.end(), [](const auto& a, const auto& b) { return a.source < b.source; });
  return out;
}

PlateauRel plateau_relation(const KeyChain& chain, int i) {
  Segmentation seg(chain);
  if (i < 0 || i + 1 >= chain.imax() || seg.plateau_of(i) != seg.plateau_of(i + 1)) {
    throw Error(Reason::invalid_pair, "positions " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                          " are not in one plateau");
  }
  RelationGen rel = relation(chain, i + 1, i);
  PlateauRel out;
  out.position = i;
  out.b = rel.b;
  out.a = rel.q - XPoly::var(i);
  return out;
}

RedundancyCert redundancy_cofactor(const KeyChain& chain, int i, int i2) {
  Segmentation seg(chain);
  const auto& pls = seg.plateaus();
  if (pls.size() < 2) throw Error(Reason::invalid_pair, "the chain has no plateau below the generator");
  const Plateau& w = pls[pls.size() - 2];
  if (!(i < i2) || !w.infinite() || !w.contains(i) || !w.contains(i2)) {
    throw Error(Reason::invalid_pair, "(" + std::to_string(i) + ", " + std::to_string(i2) +
                                          ") is not an increasing pair in the final infinite plateau");
  }
  Rewriter rw(chain);
  const RelationGen& lo = rw.relation(chain.imax(), i);
  const RelationGen& hi = rw.relation(chain.imax(), i2);
  Trace trace;
  XPoly built = rw.total_s_building(lo.body(), i2 - w.first, &trace);
  if (built != hi.body()) {
    throw Error(Reason::internal_error, "total building of Q_{imax," + std::to_string(i) + "}/b is " + built.to_string());
  }
  RedundancyCert cert;
  cert.i = i;
  cert.i2 = i2;
  cert.c0 = lo.b / hi.b;
  std::map<std::pair<int, int>, XPoly> merged;
  for (const auto& st : trace) merged[{st.l, st.i}] += st.cofactor * lo.b;
  XPoly rhs = hi.q * cert.c0;
  for (auto& [key, cof] : merged) {
    if (cof.is_zero()) continue;
    const RelationGen& gen = rw.relation(key.first, key.second);
    rhs += cof * gen.generator();
    cert.terms.push_back({gen, cof});
  }
  cert.verified = rhs == lo.q;
  return cert;
}

}  // namespace valring
