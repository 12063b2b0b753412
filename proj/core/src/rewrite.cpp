#include "valring/rewrite.hpp"

#include <algorithm>
#include <set>

#include "valring/errors.hpp"

namespace valring {

namespace {

// X_0 first; at the first differing exponent the smaller exponent is smaller.
bool lex_less(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const int x = k < a.size() ? a[k] : 0;
    const int y = k < b.size() ? b[k] : 0;
    if (x != y) return x < y;
  }
  return false;
}

std::vector<Monomial> support_desc(const XPoly& f) {
  std::vector<Monomial> out;
  for (const auto& [m, c] : f.terms()) out.push_back(m);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return lex_less(b, a); });
  return out;
}

std::string pair_text(int i, int l) { return "(" + std::to_string(i) + ", " + std::to_string(l) + ")"; }

}  // namespace

std::string_view direction_name(Direction d) { return d == Direction::building ? "building" : "reduction"; }

std::string_view order_name(Order o) {
  switch (o) {
    case Order::less: return "less";
    case Order::greater: return "greater";
    case Order::equal: return "equal";
    case Order::incomparable: return "incomparable";
  }
  return "incomparable";
}

Rewriter::Rewriter(KeyChain chain) : chain_(std::move(chain)), seg_(chain_) {
  for (int k = 0; k < chain_.imax(); ++k) at_.push_back(chain_.normalized(k));
}

const RelationGen& Rewriter::relation(int l, int i) const {
  auto it = cache_.find({l, i});
  if (it != cache_.end()) return it->second;
  return cache_.emplace(std::make_pair(l, i), valring::relation(chain_, l, i)).first->second;
}

int Rewriter::vdeg(const XPoly& f) const {
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "virtual degree of the zero polynomial");
  if (f.top_variable() >= chain_.imax()) {
    throw Error(Reason::position_out_of_range, "X" + std::to_string(f.top_variable()) + " is not a chain variable");
  }
  int best = 0;
  for (const auto& [m, c] : f.terms()) {
    int d = 0;
    for (std::size_t k = 0; k < m.size(); ++k) d += m[k] * chain_.degree(static_cast<int>(k));
    best = std::max(best, d);
  }
  return best;
}

Order Rewriter::prec_compare(const XPoly& f, const XPoly& g) const {
  if (f == g) return Order::equal;
  std::map<int, XPoly, std::greater<>> pf, pg;
  std::set<int, std::greater<>> degs;
  auto split = [&](const XPoly& h, auto& parts) {
    for (const auto& [m, c] : h.terms()) {
      const int d = vdeg(XPoly::term(1, m));
      parts[d] += XPoly::term(c, m);
      degs.insert(d);
    }
  };
  split(f, pf);
  split(g, pg);
  for (int d : degs) {
    const XPoly& a = pf[d];
    const XPoly& b = pg[d];
    if (a == b) continue;
    auto la = support_desc(a), lb = support_desc(b);
    const std::size_t n = std::max(la.size(), lb.size());
    for (std::size_t k = 0; k < n; ++k) {
      // the shorter list is completed by zeroes
      if (k >= la.size()) return Order::less;
      if (k >= lb.size()) return Order::greater;
      if (la[k] != lb[k]) return lex_less(la[k], lb[k]) ? Order::less : Order::greater;
    }
    return Order::incomparable;
  }
  return Order::equal;
}

NeatInfo Rewriter::is_neat(const XPoly& f) const {
  NeatInfo info;
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "neatness of the zero polynomial");
  const int top = f.top_variable();
  if (top >= chain_.imax()) {
    throw Error(Reason::position_out_of_range, "X" + std::to_string(top) + " is not a chain variable");
  }
  bool only_collapsed = true;
  std::map<int, std::vector<int>> by_plateau;
  for (int k : f.variables()) by_plateau[seg_.plateau_of(k)].push_back(k);
  std::optional<int> common;
  bool agree = true;
  for (const auto& [q, vars] : by_plateau) {
    const Plateau& pl = seg_.plateaus()[static_cast<std::size_t>(q)];
    if (vars.size() > 1) {
      info.violations.push_back("condition (1): several variables in the plateau starting at " + std::to_string(pl.first));
      if (pl.kind != PlateauKind::finite_multi) only_collapsed = false;
    }
    if (pl.infinite()) {
      for (int k : vars) {
        const int off = k - pl.first;
        if (common && *common != off) agree = false;
        if (!common) common = off;
      }
    }
  }
  if (!agree) {
    info.violations.push_back("condition (2): offsets differ across infinite plateaus");
    only_collapsed = false;
  }
  for (int k : f.variables()) {
    if (k >= top) continue;
    const int n = chain_.degree(k);
    if (f.deg_in(k) >= seg_.n_plus(n) / n) {
      info.violations.push_back("condition (3): degree in X" + std::to_string(k));
      only_collapsed = false;
    }
  }
  info.neat = info.violations.empty();
  info.collapsed_neat = info.neat || only_collapsed;
  info.level = agree && common ? *common : 0;
  return info;
}

void Rewriter::require_pair(int i, int l) const {
  if (l < 0 || l >= chain_.imax() || !seg_.is_succ(i, l)) {
    throw Error(Reason::invalid_pair, pair_text(i, l) + " is not a successor pair of chain variables");
  }
  if (!seg_.is_neat_pair(l, i)) throw Error(Reason::non_neat_pair, pair_text(i, l) + " is not neat");
}

XPoly Rewriter::building(const XPoly& f, int i, int l, Trace* trace) const {
  require_pair(i, l);
  const RelationGen& rel = relation(l, i);
  const int r = rel.r;
  if (f.deg_in(i) < r) return f;
  const XPoly p = rel.body();
  const Rational inv_lc = 1 / p.coeff(XPoly::var(i, r).terms().begin()->first);
  std::vector<XPoly> digits, quots;
  XPoly cur = f;
  while (!cur.is_zero()) {
    XPoly quo, rem = cur;
    for (int d = rem.deg_in(i); d >= r; d = rem.deg_in(i)) {
      XPoly t = rem.split(i)[static_cast<std::size_t>(d)] * XPoly::var(i, d - r) * inv_lc;
      quo += t;
      rem -= t * p;
    }
    digits.push_back(std::move(rem));
    if (quo.is_zero()) break;
    quots.push_back(quo);
    cur = std::move(quo);
  }
  XPoly out = XPoly::join(digits, l);
  if (trace) {
    XPoly c = XPoly::join(quots, l);
    trace->push_back({i, l, Direction::building, c * (-1 / rel.b)});
  }
  return out;
}

XPoly Rewriter::reduction(const XPoly& f, int i, int l, Trace* trace) const {
  require_pair(i, l);
  const RelationGen& rel = relation(l, i);
  auto parts = f.split(l);
  if (parts.size() <= 1) return f;
  const XPoly p = rel.body();
  std::vector<XPoly> h(parts.size());
  h.back() = parts.back();
  for (std::size_t j = parts.size() - 1; j-- > 0;) h[j] = parts[j] + p * h[j + 1];
  if (trace) {
    std::vector<XPoly> tail(h.begin() + 1, h.end());
    trace->push_back({i, l, Direction::reduction, XPoly::join(tail, l) * (1 / rel.b)});
  }
  return h[0];
}

std::vector<int> Rewriter::window(int s, int through) const {
  std::vector<int> out;
  for (int k = 0; k < chain_.imax(); ++k) {
    const int q = seg_.plateau_of(k);
    if (q > through) break;
    if (!seg_.plateaus()[static_cast<std::size_t>(q)].infinite() || seg_.offset(k) <= s) out.push_back(k);
  }
  return out;
}

std::optional<int> Rewriter::target(int i, const std::vector<int>& window) const {
  for (int l : window) {
    if (l > i && seg_.is_succ(i, l) && seg_.is_neat_pair(l, i)) return l;
  }
  return std::nullopt;
}

XPoly Rewriter::total_s_building(const XPoly& f, int s, Trace* trace, BuildOrder order,
                                 std::optional<int> through) const {
  if (s < 0) throw Error(Reason::offset_precondition, "negative level");
  const int top = f.top_variable();
  if (top < 0) return f;
  if (top >= chain_.imax()) {
    throw Error(Reason::position_out_of_range, "X" + std::to_string(top) + " is not a chain variable");
  }
  const int last_q = static_cast<int>(seg_.plateaus().size()) - 2;
  const int q = through.value_or(seg_.plateau_of(top));
  if (q < seg_.plateau_of(top) || q > last_q) {
    throw Error(Reason::position_out_of_range, "plateau bound " + std::to_string(q) + " is out of range");
  }
  for (int k : f.variables()) {
    if (seg_.plateaus()[static_cast<std::size_t>(seg_.plateau_of(k))].infinite() && seg_.offset(k) > s) {
      throw Error(Reason::offset_precondition, "X" + std::to_string(k) + " has offset above " + std::to_string(s));
    }
  }
  for (int k = 0; k <= q; ++k) {
    const Plateau& pl = seg_.plateaus()[static_cast<std::size_t>(k)];
    if (pl.infinite() && pl.first + s > pl.last) {
      throw Error(Reason::insufficient_depth, "level " + std::to_string(s) + " exceeds the computed prefix");
    }
  }
  const auto theta = window(s, q);
  std::vector<std::pair<int, int>> moves;  // (i, l)
  for (int i : theta) {
    if (auto l = target(i, theta)) moves.emplace_back(i, *l);
  }
  if (order == BuildOrder::greatest_first) std::reverse(moves.begin(), moves.end());
  const long span = static_cast<long>(theta.size()) + f.total_degree();
  const long cap = 10L * static_cast<long>(f.size()) * span * span;
  XPoly cur = f;
  for (long steps = 0;; ++steps) {
    const std::pair<int, int>* pick = nullptr;
    for (const auto& mv : moves) {
      if (cur.deg_in(mv.first) >= relation(mv.second, mv.first).r) {
        pick = &mv;
        break;
      }
    }
    if (!pick) return cur;
    if (steps >= cap) {
      throw Error(Reason::step_cap_exceeded, "total building exceeded " + std::to_string(cap) + " steps");
    }
    cur = building(cur, pick->first, pick->second, trace);
  }
}

UniPoly Rewriter::total_reduction(const XPoly& f, Trace* trace) const {
  const UniPoly direct = eval_e(f);
  if (!trace) return direct;
  XPoly cur = f;
  for (int l = cur.top_variable(); l > 0; l = cur.top_variable()) {
    int i = l - 1;
    while (i >= 0 && !(seg_.is_succ(i, l) && seg_.is_neat_pair(l, i))) --i;
    if (i < 0) throw Error(Reason::internal_error, "no neat predecessor of X" + std::to_string(l));
    cur = reduction(cur, i, l, trace);
  }
  const UniPoly traced = cur.evaluate({UniPoly::x()});
  if (traced != direct) throw Error(Reason::internal_error, "traced reduction disagrees with substitution");
  return direct;
}

UniPoly Rewriter::eval_e(const XPoly& f) const {
  if (f.top_variable() >= chain_.imax()) {
    throw Error(Reason::position_out_of_range, "X" + std::to_string(f.top_variable()) + " is not a chain variable");
  }
  return f.evaluate(at_);
}

XPoly Rewriter::replay(const Trace& trace) const {
  XPoly acc;
  for (const auto& st : trace) acc += st.cofactor * relation(st.l, st.i).generator();
  return acc;
}

int Rewriter::level_position(int q, int s) const {
  const Plateau& pl = seg_.plateaus().at(static_cast<std::size_t>(q));
  switch (pl.kind) {
    case PlateauKind::truncated_infinite: return pl.first + s;
    case PlateauKind::finite_multi: return pl.last;
    case PlateauKind::singleton: return pl.first;
  }
  return pl.first;
}

int vdeg(const KeyChain& chain, const XPoly& f) { return Rewriter(chain).vdeg(f); }
Order prec_compare(const KeyChain& chain, const XPoly& f, const XPoly& g) {
  return Rewriter(chain).prec_compare(f, g);
}
NeatInfo is_neat(const KeyChain& chain, const XPoly& f) { return Rewriter(chain).is_neat(f); }
XPoly building(const KeyChain& chain, const XPoly& f, int i, int l, Trace* trace) {
  return Rewriter(chain).building(f, i, l, trace);
}
XPoly reduction(const KeyChain& chain, const XPoly& f, int i, int l, Trace* trace) {
  return Rewriter(chain).reduction(f, i, l, trace);
}
XPoly total_s_building(const KeyChain& chain, const XPoly& f, int s, Trace* trace) {
  return Rewriter(chain).total_s_building(f, s, trace);
}
UniPoly total_reduction(const KeyChain& chain, const XPoly& f, Trace* trace) {
  return Rewriter(chain).total_reduction(f, trace);
}

}  // namespace valring
