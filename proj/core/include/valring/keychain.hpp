#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valring/finite_field.hpp"
#include "valring/oracle.hpp"
#include "valring/rational.hpp"
#include "valring/upoly.hpp"

namespace valring {

enum class ChainMode { full, collapsed };
enum class ChainStatus { incomplete, complete, prefix };

std::string_view mode_name(ChainMode m);
std::string_view status_name(ChainStatus s);

struct ChainEntry {
  int position = 0;
  UniPoly q;
  Value gamma;
  Rational scale = 1;  // p^gamma, 1 for the generator
  UniPoly normalized;

  int degree() const { return q.degree(); }
  bool is_generator() const { return gamma.is_infinite(); }
};

// One augmentation step as recorded in the branch log.
struct BranchStep {
  int position = 0;  // entry whose residual polynomial was factored
  std::size_t factor_count = 0;
  std::size_t factor_index = 0;
  std::size_t slope_count = 0;
  std::size_t slope_index = 0;
  Value lambda;  // value given to the new entry
  bool consumed = false;
  std::string residual;
};

struct BranchChoice {
  std::size_t slope_index = 0;
  std::size_t factor_index = 0;
};

// Either "unique" or an explicit list of choices, one per ambiguous step.
struct BranchSelector {
  bool unique = true;
  std::vector<BranchChoice> choices;

  static BranchSelector make_unique() { return {}; }
  static BranchSelector of(std::vector<BranchChoice> c) { return {false, std::move(c)}; }
};

struct NewtonPoint {
  int j = 0;
  Rational y;
};

struct NewtonSegment {
  int j0 = 0, j1 = 0;
  Rational slope;  // geometric slope, the value of Q_i on this branch is -slope
  Rational height;  // y_j + j * lambda along the segment
  long lattice_length = 0;

  Rational lambda() const { return -slope; }
  int length() const { return j1 - j0; }
};

struct NewtonPolygon {
  std::vector<NewtonPoint> points;
  std::vector<NewtonSegment> segments;  // left to right
};

struct ResidualPoly {
  GaloisField field;
  FqPoly poly;
};

// Residue field data attached to an entry.
struct TowerLevel {
  GaloisField field{2, 1};
  std::optional<Embedding> from_prev;  // empty means identity
  FqElem ybar_prev;  // reduction of the previous normalized key polynomial
  std::optional<FqPoly> psi;  // residual factor chosen at this entry
};

class KeyChain {
 public:
  KeyChain(PadicContext ctx, UniPoly g);

  // A chain with explicitly given entries and no residue data.
  static KeyChain from_entries(PadicContext ctx, UniPoly g, std::vector<std::pair<UniPoly, Value>> entries,
                               ChainStatus status, Branch branch, ChainMode mode = ChainMode::full);

  // Copy with the scale of one entry replaced; used for fault injection.
  KeyChain rescaled(int i, const Rational& a) const;

  const PadicContext& context() const { return ctx_; }
  const UniPoly& generator() const { return g_; }
  const std::vector<ChainEntry>& entries() const { return entries_; }
  const ChainEntry& entry(int i) const;
  int size() const { return static_cast<int>(entries_.size()); }
  ChainStatus status() const { return status_; }
  ChainMode mode() const { return mode_; }
  bool is_complete() const { return status_ == ChainStatus::complete; }
  const std::vector<BranchStep>& branch_log() const { return log_; }
  const Branch& branch() const { return branch_; }
  int infinite_degree() const { return infinite_degree_; }
  bool has_tower() const { return !tower_.empty(); }

  // Position of the generator; equals size() when the chain is a prefix.
  int imax() const;
  // Q_i or g at imax; normalized variants.
  const UniPoly& key(int i) const;
  const UniPoly& normalized(int i) const;
  Value gamma(int i) const;
  Rational scale(int i) const;
  int degree(int i) const;

  // mu_i(f) computed recursively from the chain; i = -1 is v on constants.
  Value mu(int i, const UniPoly& f) const;
  Value nu(const UniPoly& f) const;  // via the oracle
  NuOracle oracle() const { return NuOracle(ctx_, g_, branch_); }

  // Residue map on polynomials of degree < deg Q_i with nonnegative value.
  FqElem reduce(int i, const UniPoly& a) const;
  UniPoly lift(int i, const FqElem& c) const;
  const GaloisField& residue_field(int i) const;

 private:
  friend KeyChain gauss_start(const PadicContext&, const UniPoly&);
  friend KeyChain augment(const KeyChain&, std::optional<BranchChoice>);
  friend KeyChain build_chain(const PadicContext&, const UniPoly&, const BranchSelector&, int, ChainMode);
  friend KeyChain augment_step(const KeyChain&, const BranchChoice*, bool*);

  void push(UniPoly q, Value gamma);
  static KeyChain restrict(const KeyChain& full, const std::vector<int>& keep, ChainMode mode);

  PadicContext ctx_;
  UniPoly g_;
  std::vector<ChainEntry> entries_;
  std::vector<TowerLevel> tower_;
  ChainStatus status_ = ChainStatus::incomplete;
  ChainMode mode_ = ChainMode::full;
  std::vector<BranchStep> log_;
  Branch branch_ = Branch::unresolved();
  int infinite_degree_ = 0;
};

KeyChain gauss_start(const PadicContext& ctx, const UniPoly& g);
NewtonPolygon newton_polygon(const KeyChain& chain, int i, const UniPoly& f);
ResidualPoly residual_poly(const KeyChain& chain, int i, const UniPoly& f, const Rational& slope);
KeyChain augment(const KeyChain& chain, std::optional<BranchChoice> choice);
KeyChain build_chain(const PadicContext& ctx, const UniPoly& g, const BranchSelector& selector, int depth,
                     ChainMode mode);

enum class PlateauKind { singleton, finite_multi, truncated_infinite };
std::string_view plateau_kind_name(PlateauKind k);

struct Plateau {
  int first = 0;
  int last = 0;  // inclusive
  int degree = 0;
  PlateauKind kind = PlateauKind::singleton;

  int size() const { return last - first + 1; }
  bool infinite() const { return kind == PlateauKind::truncated_infinite; }
  bool contains(int i) const { return first <= i && i <= last; }
};

class Segmentation {
 public:
  explicit Segmentation(const KeyChain& chain);
  // An abstract segmentation; the last plateau is {i_max}.
  Segmentation(std::vector<Plateau> plateaus, int imax) : plateaus_(std::move(plateaus)), imax_(imax) {}

  const std::vector<Plateau>& plateaus() const { return plateaus_; }
  int imax() const { return imax_; }
  int plateau_of(int i) const;  // 0-based index q
  int ell(int q) const { return plateaus_.at(static_cast<std::size_t>(q)).first; }
  int offset(int i) const { return i - ell(plateau_of(i)); }
  int n_plus(int n) const;
  bool much_less(int i, int l) const { return plateau_of(i) < plateau_of(l); }
  bool is_imm(int i, int l) const;
  bool is_lim(int i, int l) const;
  bool is_succ(int i, int l) const { return is_imm(i, l) || is_lim(i, l); }
  int level(int l, int i) const;
  bool is_neat_pair(int l, int i) const;
  // every successor pair (l, i), ordered by l then i
  std::vector<std::pair<int, int>> successor_pairs() const;

 private:
  std::vector<Plateau> plateaus_;
  int imax_ = 0;
};

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const;
  const ValidationCheck* find(std::string_view name) const;
};

ValidationReport validate(const KeyChain& chain);

}  // namespace valring
