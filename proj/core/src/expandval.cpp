#include "valring/expandval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "valring/errors.hpp"

namespace valring {

namespace {

void require_finite(const KeyChain& chain, int i) {
  if (i < 0 || i >= chain.size() || chain.entry(i).is_generator()) {
    throw Error(Reason::position_out_of_range, "position " + std::to_string(i) + " is not a finite chain entry");
  }
}

// Normalized expansion f = sum c_t Qtilde_k^t.
std::vector<UniPoly> normalized_parts(const KeyChain& chain, int k, const UniPoly& f) {
  auto parts = qexpand(f, chain.key(k));
  Rational a = chain.scale(k);
  Rational at = 1;
  for (auto& c : parts) {
    c *= at;
    at *= a;
  }
  return parts;
}

void expand_rec(const KeyChain& chain, const UniPoly& f, const std::vector<int>& tuple, std::size_t idx,
                Exponents& exps, std::vector<ExpansionTerm>& out) {
  if (f.is_zero()) return;
  if (idx == tuple.size()) {
    if (f.degree() > 0) throw Error(Reason::malformed_input, "the tuple does not exhaust the expansion");
    out.push_back({f.coeff(0), exps});
    return;
  }
  const int k = tuple[idx];
  if (f.degree() < chain.degree(k)) {
    expand_rec(chain, f, tuple, idx + 1, exps, out);
    return;
  }
  auto parts = normalized_parts(chain, k, f);
  for (std::size_t t = 0; t < parts.size(); ++t) {
    if (parts[t].is_zero()) continue;
    if (t > 0) exps[k] = static_cast<int>(t);
    expand_rec(chain, parts[t], tuple, idx + 1, exps, out);
    exps.erase(k);
  }
}

FullExpansion finish(const KeyChain& chain, int i, const UniPoly& f, std::vector<ExpansionTerm> terms) {
  FullExpansion e;
  e.anchor = i;
  e.terms = std::move(terms);
  std::set<int, std::greater<>> appear;
  for (const auto& t : e.terms) {
    for (auto [k, x] : t.exps) {
      if (x > 0) appear.insert(k);
    }
  }
  e.tuple.assign(appear.begin(), appear.end());
  e.nu = truncate(chain, i, f);
  return e;
}

}  // namespace

UniPoly FullExpansion::evaluate(const KeyChain& chain) const {
  UniPoly acc;
  for (const auto& t : terms) {
    UniPoly m = UniPoly::constant(t.coeff);
    for (auto [k, x] : t.exps) m *= chain.normalized(k).pow(static_cast<unsigned>(x));
    acc += m;
  }
  return acc;
}

std::string FullExpansion::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << valring::to_string(t.coeff) << ")";
    for (auto [k, x] : t.exps) {
      os << "*T" << k;
      if (x > 1) os << "^" << x;
    }
  }
  if (first) os << "0";
  return os.str();
}

Value truncate(const KeyChain& chain, int i, const UniPoly& f) {
  require_finite(chain, i);
  if (f.is_zero()) return Value::infinity();
  NuOracle nu = chain.oracle();
  auto parts = qexpand(f, chain.key(i));
  const Rational g = chain.gamma(i).rational();
  Value best = Value::infinity();
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].is_zero()) continue;
    best = min(best, nu(parts[j]) + Value(g * Rational(static_cast<long>(j))));
  }
  return best;
}

std::vector<int> s_set(const KeyChain& chain, int i, const UniPoly& f, bool normalized) {
  require_finite(chain, i);
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "S-set of the zero polynomial");
  NuOracle nu = chain.oracle();
  auto parts = normalized ? normalized_parts(chain, i, f) : qexpand(f, chain.key(i));
  const Value base = normalized ? Value(0) : chain.gamma(i);
  std::vector<Value> vals;
  Value best = Value::infinity();
  for (std::size_t j = 0; j < parts.size(); ++j) {
    Value v = parts[j].is_zero() ? Value::infinity()
                                 : nu(parts[j]) + Value(base.rational() * Rational(static_cast<long>(j)));
    vals.push_back(v);
    best = min(best, v);
  }
  std::vector<int> out;
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (vals[j] == best) out.push_back(static_cast<int>(j));
  }
  return out;
}

FullExpansion expansion_from_tuple(const KeyChain& chain, int i, const UniPoly& f, const std::vector<int>& tuple) {
  require_finite(chain, i);
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "expansion of the zero polynomial");
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k] > i || tuple[k] < 0 || (k > 0 && tuple[k] >= tuple[k - 1])) {
      throw Error(Reason::malformed_input, "the tuple must be decreasing and bounded by the anchor");
    }
  }
  std::vector<int> seq = tuple;
  if (seq.empty() || seq.front() != i) seq.insert(seq.begin(), i);
  std::vector<ExpansionTerm> terms;
  Exponents exps;
  expand_rec(chain, f, seq, 0, exps, terms);
  return finish(chain, i, f, std::move(terms));
}

FullExpansion full_expansion(const KeyChain& chain, int i, const UniPoly& f) {
  require_finite(chain, i);
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "expansion of the zero polynomial");
  Segmentation seg(chain);
  NuOracle nu = chain.oracle();
  std::vector<int> seq{i};
  std::vector<UniPoly> level;
  for (auto& c : normalized_parts(chain, i, f)) {
    if (!c.is_zero()) level.push_back(std::move(c));
  }
  while (true) {
    int d = 0;
    for (const auto& c : level) d = std::max(d, c.degree());
    if (d == 0) break;
    // the highest plateau whose degree does not exceed the coefficients'
    int q = -1;
    for (std::size_t k = 0; k + 1 < seg.plateaus().size(); ++k) {
      if (seg.plateaus()[k].degree <= d) q = static_cast<int>(k);
    }
    if (q < 0) throw Error(Reason::internal_error, "no plateau below the coefficient degree");
    const Plateau& pl = seg.plateaus()[static_cast<std::size_t>(q)];
    std::vector<Value> target;
    for (const auto& c : level) target.push_back(nu(c));
    int chosen = -1;
    for (int k = pl.first; k <= pl.last && chosen < 0; ++k) {
      bool ok = true;
      for (std::size_t j = 0; j < level.size() && ok; ++j) ok = truncate(chain, k, level[j]) == target[j];
      if (ok) chosen = k;
    }
    if (chosen < 0) {
      throw Error(Reason::insufficient_depth, "no prefix member of degree " + std::to_string(pl.degree) +
                                                  " computes the value of every coefficient");
    }
    seq.push_back(chosen);
    std::vector<UniPoly> next;
    for (const auto& c : level) {
      if (c.degree() < chain.degree(chosen)) {
        next.push_back(c);
        continue;
      }
      for (auto& part : normalized_parts(chain, chosen, c)) {
        if (!part.is_zero()) next.push_back(std::move(part));
      }
    }
    level = std::move(next);
  }
  std::vector<ExpansionTerm> terms;
  Exponents exps;
  expand_rec(chain, f, seq, 0, exps, terms);
  return finish(chain, i, f, std::move(terms));
}

std::vector<std::string> check_full_expansion(const KeyChain& chain, const FullExpansion& e, const UniPoly& f) {
  std::vector<std::string> bad;
  const PadicContext& ctx = chain.context();
  if (e.evaluate(chain) != f) bad.push_back("evaluation identity");
  Value m = Value::infinity();
  for (const auto& t : e.terms) m = min(m, ctx.pval(t.coeff));
  if (m != truncate(chain, e.anchor, f)) bad.push_back("condition (1): minimum coefficient value");
  Segmentation seg(chain);
  std::map<int, int> per_plateau;
  for (const auto& t : e.terms) {
    for (auto [k, x] : t.exps) {
      if (k > e.anchor) bad.push_back("position above the anchor");
      if (k < e.anchor) {
        const int n = chain.degree(k);
        if (x >= seg.n_plus(n) / n) bad.push_back("condition (2): exponent bound at position " + std::to_string(k));
      }
      if (x > 0) {
        auto [it, fresh] = per_plateau.emplace(seg.plateau_of(k), k);
        if (!fresh && it->second != k) bad.push_back("condition (3): two positions of degree " + std::to_string(chain.degree(k)));
      }
    }
  }
  return bad;
}

ExpansionLevel expansion_level(const Segmentation& seg, const FullExpansion& e) {
  ExpansionLevel out;
  const std::size_t w = seg.plateaus().size() - 1;
  out.j.assign(w, std::nullopt);
  for (const auto& t : e.terms) {
    for (auto [k, x] : t.exps) {
      if (x <= 0) continue;
      const int q = seg.plateau_of(k);
      if (static_cast<std::size_t>(q) < w) out.j[static_cast<std::size_t>(q)] = k;
    }
  }
  std::optional<int> common;
  for (std::size_t q = 0; q < w; ++q) {
    if (!seg.plateaus()[q].infinite() || !out.j[q]) continue;
    const int off = *out.j[q] - seg.plateaus()[q].first;
    if (common && *common != off) out.neat = false;
    if (!common) common = off;
  }
  out.level = out.neat && common ? *common : 0;
  return out;
}

NeatResult make_neat(const NeatSkeleton& skel, int s) {
  NeatResult res;
  res.skeleton = skel;
  for (int q = static_cast<int>(skel.infinite.size()) - 1; q >= 0; --q) {
    if (!skel.infinite[static_cast<std::size_t>(q)]) continue;
    int u = s;
    for (const auto& sup : res.skeleton.supports) {
      auto it = sup.find(q);
      if (it != sup.end()) u = std::max(u, it->second);
    }
    ++res.passes;
    if (u == s) continue;
    res.dropped[q] = {s, u};
    for (auto& sup : res.skeleton.supports) {
      auto it = sup.find(q);
      if (it == sup.end() || it->second < s) continue;
      // members inside the window are re-expanded through the surviving member
      it->second = it->second >= u ? it->second - (u - s) : s;
    }
  }
  return res;
}

}  // namespace valring
