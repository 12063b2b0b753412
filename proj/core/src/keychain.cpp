#include "valring/keychain.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "valring/errors.hpp"

namespace valring {

namespace {

long as_long(const Rational& q) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
    throw Error(Reason::internal_error, "expected a machine-size integer, got " + to_string(q));
  }
  return q.get_num().get_si();
}

struct HullPoint {
  int j;
  Rational y;
};

// Lower convex hull, left to right, collinear points dropped.
std::vector<NewtonSegment> lower_hull(const std::vector<HullPoint>& pts) {
  std::vector<HullPoint> h;
  for (const auto& p : pts) {
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h[h.size() - 1];
      Rational cross = Rational(b.j - a.j) * (p.y - a.y) - (b.y - a.y) * Rational(p.j - a.j);
      if (cross > 0) break;
      h.pop_back();
    }
    h.push_back(p);
  }
  std::vector<NewtonSegment> segs;
  for (std::size_t k = 1; k < h.size(); ++k) {
    NewtonSegment s;
    s.j0 = h[k - 1].j;
    s.j1 = h[k].j;
    s.slope = (h[k].y - h[k - 1].y) / Rational(s.j1 - s.j0);
    s.slope.canonicalize();
    s.height = h[k - 1].y - Rational(s.j0) * s.slope;
    s.lattice_length = (s.j1 - s.j0) / static_cast<long>(s.slope.get_den().get_si());
    if (s.lattice_length == 0) s.lattice_length = 1;
    segs.push_back(s);
  }
  return segs;
}

std::vector<HullPoint> polygon_points(const KeyChain& chain, int prev, const std::vector<UniPoly>& parts) {
  std::vector<HullPoint> pts;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].is_zero()) continue;
    Value y = chain.mu(prev, parts[j]);
    pts.push_back({static_cast<int>(j), y.rational()});
  }
  return pts;
}

UniPoly poly_pow(const UniPoly& f, long e) { return f.pow(static_cast<unsigned>(e)); }

// Integer root of a linear monic integral polynomial x - r.
Integer linear_root(const UniPoly& q) {
  Rational r = -q.coeff(0);
  return r.get_num();
}

}  // namespace

std::string_view mode_name(ChainMode m) { return m == ChainMode::full ? "full" : "collapsed"; }

std::string_view status_name(ChainStatus s) {
  switch (s) {
    case ChainStatus::incomplete: return "incomplete";
    case ChainStatus::complete: return "complete";
    case ChainStatus::prefix: return "prefix-of-infinite-plateau";
  }
  return "incomplete";
}

std::string_view plateau_kind_name(PlateauKind k) {
  switch (k) {
    case PlateauKind::singleton: return "singleton";
    case PlateauKind::finite_multi: return "finite-multi";
    case PlateauKind::truncated_infinite: return "truncated-infinite";
  }
  return "singleton";
}

KeyChain::KeyChain(PadicContext ctx, UniPoly g) : ctx_(std::move(ctx)), g_(std::move(g)) {}

KeyChain KeyChain::from_entries(PadicContext ctx, UniPoly g, std::vector<std::pair<UniPoly, Value>> entries,
                                ChainStatus status, Branch branch, ChainMode mode) {
  KeyChain c(std::move(ctx), std::move(g));
  for (auto& [q, gamma] : entries) c.push(std::move(q), gamma);
  c.status_ = status;
  c.branch_ = std::move(branch);
  c.mode_ = mode;
  if (status == ChainStatus::prefix && !c.entries_.empty()) c.infinite_degree_ = c.entries_.back().degree();
  return c;
}

KeyChain KeyChain::rescaled(int i, const Rational& a) const {
  if (entry(i).is_generator() || a == 0) throw Error(Reason::position_out_of_range, "cannot rescale position " + std::to_string(i));
  KeyChain c = *this;
  auto& e = c.entries_[static_cast<std::size_t>(i)];
  e.scale = a;
  e.normalized = e.q * Rational(1 / a);
  return c;
}

void KeyChain::push(UniPoly q, Value gamma) {
  ChainEntry e;
  e.position = size();
  e.gamma = gamma;
  if (gamma.is_finite()) {
    const Rational& gq = gamma.rational();
    e.scale = gq.get_den() == 1 ? ctx_.power(as_long(gq)) : Rational(1);
  }
  e.normalized = q * Rational(1 / e.scale);
  e.q = std::move(q);
  entries_.push_back(std::move(e));
}

const ChainEntry& KeyChain::entry(int i) const {
  if (i < 0 || i >= size()) throw Error(Reason::position_out_of_range, "no chain entry at position " + std::to_string(i));
  return entries_[static_cast<std::size_t>(i)];
}

int KeyChain::imax() const { return is_complete() ? size() - 1 : size(); }

const UniPoly& KeyChain::key(int i) const {
  if (i == imax()) return g_;
  return entry(i).q;
}

const UniPoly& KeyChain::normalized(int i) const {
  if (i == imax()) return g_;
  return entry(i).normalized;
}

Value KeyChain::gamma(int i) const {
  if (i == imax()) return Value::infinity();
  return entry(i).gamma;
}

Rational KeyChain::scale(int i) const {
  if (i == imax()) return 1;
  return entry(i).scale;
}

int KeyChain::degree(int i) const { return key(i).degree(); }

Value KeyChain::mu(int i, const UniPoly& f) const {
  if (f.is_zero()) return Value::infinity();
  if (i < 0) {
    if (f.degree() > 0) throw Error(Reason::internal_error, "valuation below the first entry needs a constant");
    return ctx_.pval(f.coeff(0));
  }
  if (i >= size()) {
    if (i == imax()) throw Error(Reason::insufficient_depth, "the generator is not part of a prefix chain");
    throw Error(Reason::position_out_of_range, "no chain entry at position " + std::to_string(i));
  }
  const ChainEntry& e = entries_[static_cast<std::size_t>(i)];
  if (e.is_generator()) {
    UniPoly r = f % g_;
    if (r.is_zero()) return Value::infinity();
    return mu(i - 1, r);
  }
  auto parts = qexpand(f, e.q);
  Value best = Value::infinity();
  for (std::size_t t = 0; t < parts.size(); ++t) {
    if (parts[t].is_zero()) continue;
    Value term = mu(i - 1, parts[t]) + Value(e.gamma.rational() * Rational(static_cast<long>(t)));
    best = min(best, term);
  }
  return best;
}

Value KeyChain::nu(const UniPoly& f) const { return oracle()(f); }

const GaloisField& KeyChain::residue_field(int i) const {
  if (tower_.empty()) throw Error(Reason::internal_error, "chain carries no residue data");
  if (i < 0 || i >= static_cast<int>(tower_.size())) {
    throw Error(Reason::position_out_of_range, "no residue field at position " + std::to_string(i));
  }
  return tower_[static_cast<std::size_t>(i)].field;
}

FqElem KeyChain::reduce(int i, const UniPoly& a) const {
  const GaloisField& F = residue_field(i);
  if (a.is_zero()) return F.zero();
  if (a.degree() >= degree(i)) throw Error(Reason::internal_error, "reduction needs degree below the key polynomial");
  if (i == 0) {
    Value v = ctx_.pval(a.coeff(0));
    if (v < Value(0)) throw Error(Reason::internal_error, "reduction of an element of negative value");
    if (v > Value(0)) return F.zero();
    return F.from_int(ctx_.residue(a.coeff(0)));
  }
  const TowerLevel& lvl = tower_[static_cast<std::size_t>(i)];
  const ChainEntry& prev = entries_[static_cast<std::size_t>(i - 1)];
  const long gp = as_long(prev.gamma.rational());
  auto parts = qexpand(a, prev.q);
  FqElem acc = F.zero();
  for (std::size_t t = 0; t < parts.size(); ++t) {
    if (parts[t].is_zero()) continue;
    const long shift = gp * static_cast<long>(t);
    Value val = mu(i - 2, parts[t]) + Value(shift);
    if (val > Value(0)) continue;
    if (val < Value(0)) throw Error(Reason::internal_error, "reduction of an element of negative value");
    FqElem r = reduce(i - 1, parts[t] * ctx_.power(shift));
    if (lvl.from_prev) r = (*lvl.from_prev)(r);
    acc = F.add(acc, F.mul(r, F.pow(lvl.ybar_prev, t)));
  }
  return acc;
}

UniPoly KeyChain::lift(int i, const FqElem& c) const {
  const GaloisField& F = residue_field(i);
  const long p = ctx_.prime();
  // monomial basis prod_{j<i} Qtilde_j^{e_j} with e_j below the degree ratio
  std::vector<int> radix;
  for (int j = 0; j < i; ++j) radix.push_back(degree(j + 1) / degree(j));
  std::vector<UniPoly> basis;
  std::vector<int> e(radix.size(), 0);
  while (true) {
    UniPoly b = UniPoly::constant(1);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] > 0) b *= poly_pow(normalized(static_cast<int>(j)), e[j]);
    }
    basis.push_back(b);
    std::size_t k = 0;
    while (k < e.size() && ++e[k] == radix[k]) e[k++] = 0;
    if (k == e.size()) break;
  }
  const std::size_t n = F.degree();
  if (basis.size() != n) throw Error(Reason::internal_error, "residue basis has the wrong size");
  std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
  for (std::size_t col = 0; col < n; ++col) {
    auto co = F.coords(reduce(i, basis[col]));
    for (std::size_t row = 0; row < n; ++row) a[row][col] = row < co.size() ? co[row] : 0;
  }
  auto target = F.coords(c);
  target.resize(n, 0);
  std::vector<long> x;
  if (!solve_mod_p(a, target, p, x)) throw Error(Reason::internal_error, "residue basis is singular");
  UniPoly out;
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k] != 0) out += basis[k] * Rational(x[k]);
  }
  return out;
}

KeyChain KeyChain::restrict(const KeyChain& full, const std::vector<int>& keep, ChainMode mode) {
  KeyChain c(full.ctx_, full.g_);
  c.mode_ = mode;
  c.status_ = full.status_;
  c.branch_ = full.branch_;
  c.infinite_degree_ = full.infinite_degree_;
  c.log_ = full.log_;
  int prev = -1;
  for (int k : keep) {
    c.push(full.entries_[static_cast<std::size_t>(k)].q, full.entries_[static_cast<std::size_t>(k)].gamma);
    if (!full.tower_.empty()) {
      TowerLevel lvl = full.tower_[static_cast<std::size_t>(k)];
      const TowerLevel& link = full.tower_[static_cast<std::size_t>(prev + 1)];
      lvl.from_prev = prev < 0 ? std::nullopt : link.from_prev;
      lvl.ybar_prev = prev < 0 ? FqElem{} : link.ybar_prev;
      c.tower_.push_back(std::move(lvl));
    }
    prev = k;
  }
  return c;
}

KeyChain gauss_start(const PadicContext& ctx, const UniPoly& g) {
  if (g.degree() < 1) throw Error(Reason::unsupported_normalization, "the generator must have degree at least 1");
  if (!g.is_monic()) throw Error(Reason::unsupported_normalization, "the generator must be monic; rescale it");
  for (const auto& c : g.coeffs()) {
    if (!is_integral(c)) {
      throw Error(Reason::unsupported_normalization, "the generator must have integral coefficients; rescale it");
    }
  }
  if (ctx.pval(g.coeff(0)) != Value(0)) {
    throw Error(Reason::unsupported_normalization,
                "g(0) must be a unit so that the roots of g are units; rescale the generator");
  }
  if (g.degree() >= 2 && resultant(g, g.derivative()) == 0) {
    throw Error(Reason::reducible_generator, "the generator has a repeated factor");
  }
  KeyChain c(ctx, g);
  c.push(UniPoly::x(), Value(0));
  c.tower_.push_back(TowerLevel{GaloisField(ctx.prime(), 1), std::nullopt, {}, std::nullopt});
  return c;
}

NewtonPolygon newton_polygon(const KeyChain& chain, int i, const UniPoly& f) {
  const ChainEntry& e = chain.entry(i);
  if (e.is_generator()) throw Error(Reason::position_out_of_range, "no polygon at the generator position");
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "polygon of the zero polynomial");
  auto parts = qexpand(f, e.q);
  auto pts = polygon_points(chain, i - 1, parts);
  NewtonPolygon np;
  for (const auto& p : pts) np.points.push_back({p.j, p.y});
  np.segments = lower_hull(pts);
  return np;
}

ResidualPoly residual_poly(const KeyChain& chain, int i, const UniPoly& f, const Rational& slope) {
  NewtonPolygon np = newton_polygon(chain, i, f);
  auto it = std::find_if(np.segments.begin(), np.segments.end(), [&](const NewtonSegment& s) { return s.slope == slope; });
  if (it == np.segments.end()) {
    throw Error(Reason::malformed_input, "slope " + to_string(slope) + " is not a side of the polygon");
  }
  if (slope.get_den() != 1) {
    throw Error(Reason::ramified_branch, "slope " + to_string(slope) + " is fractional; the branch is ramified");
  }
  const PadicContext& ctx = chain.context();
  const long lambda = as_long(it->lambda());
  const long height = as_long(it->height);
  auto parts = qexpand(f, chain.key(i));
  const GaloisField& F = chain.residue_field(i);
  FqPoly r;
  for (int j = it->j0; j <= it->j1; ++j) {
    const UniPoly& c = parts[static_cast<std::size_t>(j)];
    FqElem coef = F.zero();
    if (!c.is_zero()) {
      const long shift = j * lambda - height;
      if (chain.mu(i - 1, c) + Value(shift) == Value(0)) coef = chain.reduce(i, c * ctx.power(shift));
    }
    r.push_back(coef);
  }
  fq::trim(r);
  return {F, r};
}

KeyChain augment_step(const KeyChain& chain, const BranchChoice* choice, bool* consumed) {
  if (consumed) *consumed = false;
  if (chain.status_ != ChainStatus::incomplete && chain.status_ != ChainStatus::prefix) {
    throw Error(Reason::malformed_input, "the chain is already complete");
  }
  if (!chain.has_tower()) throw Error(Reason::internal_error, "chain carries no residue data");
  const PadicContext& ctx = chain.context();
  const UniPoly& g = chain.generator();
  const int last = chain.size() - 1;
  const ChainEntry& cur = chain.entry(last);
  const Rational gamma = cur.gamma.rational();

  ResidualPoly res = residual_poly(chain, last, g, -gamma);
  const GaloisField& F = res.field;
  auto factors = fq::factor(F, res.poly);
  if (factors.empty()) throw Error(Reason::internal_error, "residual polynomial has no factors");

  BranchStep step;
  step.position = last;
  step.factor_count = factors.size();
  step.residual = fq::to_string(F, res.poly);

  auto need_choice = [&](std::size_t slopes) {
    if (choice) return;
    std::ostringstream os;
    os << "augmentation at position " << last << " offers " << factors.size() << " residual factor(s) and " << slopes
       << " admissible slope(s); supply a branch choice";
    throw Error(Reason::ambiguous_branch, os.str());
  };

  std::size_t fidx = 0;
  if (factors.size() > 1) {
    need_choice(0);
    fidx = choice->factor_index;
    if (fidx >= factors.size()) throw Error(Reason::malformed_input, "residual factor index out of range");
  }
  const FqPoly psi = factors[fidx].poly;
  const int d = fq::degree(psi);
  step.factor_index = fidx;

  TowerLevel next;
  if (d == 1) {
    next.field = F;
    next.ybar_prev = F.neg(psi[0]);
  } else {
    GaloisField big(ctx.prime(), F.degree() * static_cast<unsigned>(d));
    Embedding emb(F, big);
    auto rts = fq::roots(big, emb.map(psi));
    if (rts.empty()) throw Error(Reason::internal_error, "residual factor has no root in its splitting field");
    next.field = big;
    next.from_prev = emb;
    next.ybar_prev = rts.front();
  }

  KeyChain out = chain;
  out.tower_[static_cast<std::size_t>(last)].psi = psi;
  const int n_new = cur.degree() * d;

  if (n_new == g.degree()) {
    if (factors.size() > 1 && consumed) *consumed = true;
    step.consumed = factors.size() > 1;
    step.lambda = Value::infinity();
    out.push(g, Value::infinity());
    out.tower_.push_back(std::move(next));
    out.status_ = ChainStatus::complete;
    out.branch_ = Branch::unique();
    out.log_.push_back(step);
    return out;
  }

  UniPoly phi;
  if (cur.degree() == 1 && d == 1 && gamma > 0) {
    const long gl = as_long(gamma);
    Integer z = F.coords(next.ybar_prev).empty() ? Integer(0) : Integer(F.coords(next.ybar_prev)[0]);
    Integer mod = ctx.power(gl + 1).get_num();
    Integer r = linear_root(cur.q) + ctx.power(gl).get_num() * z;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    phi = UniPoly(std::vector<Rational>{Rational(-r), Rational(1)});
  } else {
    for (int t = 0; t <= d; ++t) {
      const FqElem& c = psi[static_cast<std::size_t>(t)];
      if (F.is_zero(c)) continue;
      UniPoly term = chain.lift(last, c) * ctx.power(as_long(gamma * Rational(d - t))) * cur.q.pow(static_cast<unsigned>(t));
      phi += term;
    }
  }

  const Value mu_phi = chain.mu(last, phi);
  auto pts = polygon_points(chain, last, qexpand(g, phi));
  auto segs = lower_hull(pts);
  std::vector<NewtonSegment> admissible;
  for (const auto& s : segs) {
    if (Value(s.lambda()) > mu_phi) admissible.push_back(s);
  }
  std::sort(admissible.begin(), admissible.end(),
            [](const NewtonSegment& a, const NewtonSegment& b) { return a.lambda() < b.lambda(); });
  if (admissible.empty()) throw Error(Reason::internal_error, "no admissible side after augmentation");
  step.slope_count = admissible.size();

  std::size_t sidx = 0;
  if (admissible.size() > 1) {
    need_choice(admissible.size());
    sidx = choice->slope_index;
    if (sidx >= admissible.size()) throw Error(Reason::malformed_input, "slope index out of range");
  }
  if (factors.size() > 1 && admissible.size() == 1 && choice->slope_index != 0) {
    throw Error(Reason::malformed_input, "slope index out of range");
  }
  const bool used = factors.size() > 1 || admissible.size() > 1;
  if (consumed) *consumed = used;
  step.consumed = used;
  step.slope_index = sidx;

  const NewtonSegment& side = admissible[sidx];
  if (side.lambda().get_den() != 1) {
    throw Error(Reason::ramified_branch, "side of slope " + to_string(side.slope) +
                                             " is fractional; the branch is ramified");
  }
  step.lambda = Value(side.lambda());
  out.push(phi, Value(side.lambda()));
  out.tower_.push_back(std::move(next));
  if (side.length() == 1 && phi.degree() < g.degree()) out.infinite_degree_ = phi.degree();
  out.log_.push_back(step);
  return out;
}

KeyChain augment(const KeyChain& chain, std::optional<BranchChoice> choice) {
  return augment_step(chain, choice ? &*choice : nullptr, nullptr);
}

namespace {

std::vector<int> visible(const KeyChain& chain, ChainMode mode) {
  std::vector<int> keep;
  const int n = chain.size();
  for (int k = 0; k < n; ++k) {
    const int deg = chain.entry(k).degree();
    const bool generator = chain.entry(k).is_generator();
    const bool last_of_degree = k + 1 == n || chain.entry(k + 1).degree() != deg || chain.entry(k + 1).is_generator();
    if (mode == ChainMode::full || generator || deg == chain.infinite_degree() || last_of_degree) keep.push_back(k);
  }
  return keep;
}

Branch derive_branch(const KeyChain& chain) {
  if (chain.is_complete()) return Branch::unique();
  if (chain.infinite_degree() != 1) return Branch::unresolved();
  const PadicContext& ctx = chain.context();
  const UniPoly& g = chain.generator();
  const UniPoly dg = g.derivative();
  KeyChain walk = chain;
  for (int step = 0; step < 512; ++step) {
    const ChainEntry& e = walk.entry(walk.size() - 1);
    if (e.degree() == 1) {
      Rational r = -e.q.coeff(0);
      Value vg = ctx.pval(g(r));
      Value vd = ctx.pval(dg(r));
      if (vd.is_finite() && vg > vd + vd && e.gamma > vd) {
        Integer mod = ctx.power(e.gamma.to_long()).get_num();
        Integer rep = r.get_num();
        mpz_fdiv_r(rep.get_mpz_t(), rep.get_mpz_t(), mod.get_mpz_t());
        return Branch::rational_root({rep, e.gamma.to_long()});
      }
    }
    walk = augment(walk, std::nullopt);
  }
  return Branch::unresolved();
}

}  // namespace

KeyChain build_chain(const PadicContext& ctx, const UniPoly& g, const BranchSelector& selector, int depth,
                     ChainMode mode) {
  if (depth < 1) throw Error(Reason::malformed_input, "depth must be at least 1");
  KeyChain chain = gauss_start(ctx, g);
  std::size_t next_choice = 0;
  constexpr int kMaxSteps = 4096;
  int steps = 0;
  while (!chain.is_complete()) {
    if (chain.infinite_degree() > 0 && static_cast<int>(visible(chain, mode).size()) >= depth) break;
    if (++steps > kMaxSteps) throw Error(Reason::no_convergence, "chain construction exceeded the step cap");
    const BranchChoice* choice = nullptr;
    if (!selector.unique && next_choice < selector.choices.size()) choice = &selector.choices[next_choice];
    bool consumed = false;
    chain = augment_step(chain, choice, &consumed);
    if (consumed) ++next_choice;
  }
  if (chain.is_complete()) {
    chain.branch_ = Branch::unique();
    return KeyChain::restrict(chain, visible(chain, mode), mode);
  }
  chain.status_ = ChainStatus::prefix;
  chain.branch_ = derive_branch(chain);
  auto keep = visible(chain, mode);
  keep.resize(static_cast<std::size_t>(depth));
  if (chain.entry(keep.back()).degree() != chain.infinite_degree()) {
    throw Error(Reason::insufficient_depth,
                "depth " + std::to_string(depth) + " ends before the infinite plateau of degree " +
                    std::to_string(chain.infinite_degree()));
  }
  KeyChain out = KeyChain::restrict(chain, keep, mode);
  std::erase_if(out.log_, [&](const BranchStep& s) { return s.position >= keep.back(); });
  return out;
}

Segmentation::Segmentation(const KeyChain& chain) {
  imax_ = chain.imax();
  const int finite_end = chain.is_complete() ? chain.size() - 1 : chain.size();
  for (int k = 0; k < finite_end; ++k) {
    const int deg = chain.entry(k).degree();
    if (plateaus_.empty() || plateaus_.back().degree != deg) {
      plateaus_.push_back({k, k, deg, PlateauKind::singleton});
    } else {
      plateaus_.back().last = k;
      plateaus_.back().kind = PlateauKind::finite_multi;
    }
  }
  if (chain.status() == ChainStatus::prefix && !plateaus_.empty()) {
    plateaus_.back().kind = PlateauKind::truncated_infinite;
  }
  plateaus_.push_back({imax_, imax_, chain.generator().degree(), PlateauKind::singleton});
}

int Segmentation::plateau_of(int i) const {
  for (std::size_t q = 0; q < plateaus_.size(); ++q) {
    if (plateaus_[q].contains(i)) return static_cast<int>(q);
  }
  throw Error(Reason::position_out_of_range, "position " + std::to_string(i) + " is outside the chain");
}

int Segmentation::n_plus(int n) const {
  for (std::size_t q = 0; q + 1 < plateaus_.size(); ++q) {
    if (plateaus_[q].degree == n) return plateaus_[q + 1].degree;
  }
  throw Error(Reason::position_out_of_range, "no plateau of degree " + std::to_string(n) + " has a successor");
}

bool Segmentation::is_imm(int i, int l) const {
  if (l != i + 1 || i < 0 || l > imax_) return false;
  // an infinite plateau has no last element
  return !(l == imax_ && plateaus_[static_cast<std::size_t>(plateau_of(i))].infinite());
}

bool Segmentation::is_lim(int i, int l) const {
  if (i < 0 || l > imax_ || i >= l) return false;
  const int qi = plateau_of(i);
  return plateaus_[static_cast<std::size_t>(qi)].infinite() && plateau_of(l) == qi + 1;
}

int Segmentation::level(int l, int i) const {
  if (!is_succ(i, l)) {
    throw Error(Reason::invalid_pair,
                "(" + std::to_string(l) + ", " + std::to_string(i) + ") is not a successor pair");
  }
  if (l == i + 1) return offset(i);
  return std::max(offset(i), offset(l));
}

bool Segmentation::is_neat_pair(int l, int i) const {
  if (!is_succ(i, l)) return false;
  const int qi = plateau_of(i), ql = plateau_of(l);
  if (qi != ql && plateaus_[static_cast<std::size_t>(qi)].infinite() &&
      plateaus_[static_cast<std::size_t>(ql)].infinite()) {
    return offset(i) == offset(l);
  }
  return true;
}

std::vector<std::pair<int, int>> Segmentation::successor_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int l = 1; l <= imax_; ++l) {
    for (int i = 0; i < l; ++i) {
      if (is_succ(i, l)) out.emplace_back(l, i);
    }
  }
  return out;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate(const KeyChain& chain) {
  ValidationReport rep;
  const PadicContext& ctx = chain.context();
  auto add = [&](std::string name) -> ValidationCheck& {
    rep.checks.push_back({std::move(name), true, ""});
    return rep.checks.back();
  };
  auto fail = [](ValidationCheck& c, const std::string& w) {
    if (c.passed) c.witness = w;
    c.passed = false;
  };

  auto& monic = add("monic-integral");
  for (int i = 0; i < chain.size(); ++i) {
    const UniPoly& q = chain.entry(i).q;
    bool ok = q.is_monic() && std::all_of(q.coeffs().begin(), q.coeffs().end(), is_integral);
    if (!ok) fail(monic, "position " + std::to_string(i) + ": " + q.to_string());
  }

  auto& degrees = add("degrees");
  for (int i = 1; i < chain.size(); ++i) {
    int a = chain.entry(i - 1).degree(), b = chain.entry(i).degree();
    if (b < a || b % a != 0) fail(degrees, "positions " + std::to_string(i - 1) + ", " + std::to_string(i));
  }

  auto& ram = add("unramified");
  for (int i = 0; i < chain.size(); ++i) {
    const Value& gm = chain.entry(i).gamma;
    if (!gm.is_integer()) fail(ram, "position " + std::to_string(i) + " has value " + to_string(gm));
  }

  auto& plateau = add("plateau-values");
  for (int i = 1; i < chain.size(); ++i) {
    const auto &a = chain.entry(i - 1), &b = chain.entry(i);
    if (a.degree() == b.degree() && !b.is_generator() && !(a.gamma < b.gamma)) {
      fail(plateau, "positions " + std::to_string(i - 1) + ", " + std::to_string(i));
    }
  }

  auto& start = add("start");
  if (chain.mode() == ChainMode::full && chain.size() > 0) {
    const auto& e0 = chain.entry(0);
    if (!(e0.q == UniPoly::x() && e0.gamma == Value(0))) fail(start, "first entry " + e0.q.to_string());
  }

  auto& scaling = add("scaling");
  for (int i = 0; i < chain.size(); ++i) {
    const auto& e = chain.entry(i);
    if (e.is_generator()) continue;
    if (e.gamma.is_integer() && e.scale != ctx.power(e.gamma.to_long())) {
      fail(scaling, "position " + std::to_string(i));
    }
  }

  auto& values = add("oracle-values");
  try {
    NuOracle nu = chain.oracle();
    for (int i = 0; i < chain.size(); ++i) {
      const auto& e = chain.entry(i);
      if (e.is_generator()) continue;
      Value v = nu(e.q);
      if (v != e.gamma) {
        fail(values, "position " + std::to_string(i) + ": oracle " + to_string(v) + ", chain " + to_string(e.gamma));
      }
    }
  } catch (const Error& err) {
    if (err.reason() != Reason::oracle_unavailable) throw;
    values.witness = "not checked: " + std::string(err.what());
  }

  auto& strong = add("strongly-monic");
  Segmentation seg(chain);
  for (auto [l, i] : seg.successor_pairs()) {
    if (chain.entry(i).is_generator()) continue;
    if (l == seg.imax() && !seg.is_imm(i, l)) continue;
    auto parts = qexpand(chain.key(l), chain.key(i));
    const int r = static_cast<int>(parts.size()) - 1;
    const bool top_one = parts.back() == UniPoly::constant(1);
    bool in_s = false;
    try {
      Value top = chain.mu(i - 1, parts.back()) + Value(chain.gamma(i).rational() * Rational(r));
      in_s = top == chain.mu(i, chain.key(l));
    } catch (const Error&) {
      in_s = false;
    }
    if (!top_one || !in_s) {
      fail(strong, "pair (" + std::to_string(l) + ", " + std::to_string(i) + ")");
    }
  }
  return rep;
}

}  // namespace valring
