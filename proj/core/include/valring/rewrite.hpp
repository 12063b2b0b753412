#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valring/keychain.hpp"
#include "valring/presentrel.hpp"
#include "valring/xpoly.hpp"

namespace valring {

enum class Direction { building, reduction };
std::string_view direction_name(Direction d);

// input - output = cofactor * generator of relation (l, i)
struct TraceStep {
  int i = 0;
  int l = 0;
  Direction direction = Direction::building;
  XPoly cofactor;
};

using Trace = std::vector<TraceStep>;

enum class Order { less, greater, equal, incomparable };
std::string_view order_name(Order o);

struct NeatInfo {
  bool neat = false;
  int level = 0;
  // condition (1) fails only inside finite plateaus with several members
  bool collapsed_neat = false;
  std::vector<std::string> violations;
};

enum class BuildOrder { least_first, greatest_first };

/// Rewriting calculus over one chain; caches relations.
class Rewriter {
 public:
  explicit Rewriter(KeyChain chain);

  const KeyChain& chain() const { return chain_; }
  const Segmentation& segmentation() const { return seg_; }
  const RelationGen& relation(int l, int i) const;

  int vdeg(const XPoly& f) const;
  Order prec_compare(const XPoly& f, const XPoly& g) const;
  NeatInfo is_neat(const XPoly& f) const;

  XPoly building(const XPoly& f, int i, int l, Trace* trace = nullptr) const;
  XPoly reduction(const XPoly& f, int i, int l, Trace* trace = nullptr) const;

  /// Positions with offset at most s (every member of a finite plateau),
  /// restricted to plateaus up to `through`.
  std::vector<int> window(int s, int through) const;
  /// Least position of the window that the building from i may target, if any.
  std::optional<int> target(int i, const std::vector<int>& window) const;

  /// `through` defaults to the plateau of the top variable of f.
  XPoly total_s_building(const XPoly& f, int s, Trace* trace = nullptr,
                         BuildOrder order = BuildOrder::least_first,
                         std::optional<int> through = std::nullopt) const;
  UniPoly total_reduction(const XPoly& f, Trace* trace = nullptr) const;

  /// X_k -> Qtilde_k(x)
  UniPoly eval_e(const XPoly& f) const;
  /// sum of cofactor * generator over a trace
  XPoly replay(const Trace& trace) const;
  /// Position whose truncation equals mu0 of a total s-building with top variable in plateau q.
  int level_position(int q, int s) const;

 private:
  void require_pair(int i, int l) const;

  KeyChain chain_;
  Segmentation seg_;
  std::vector<UniPoly> at_;
  mutable std::map<std::pair<int, int>, RelationGen> cache_;
};

int vdeg(const KeyChain& chain, const XPoly& f);
Order prec_compare(const KeyChain& chain, const XPoly& f, const XPoly& g);
NeatInfo is_neat(const KeyChain& chain, const XPoly& f);
XPoly building(const KeyChain& chain, const XPoly& f, int i, int l, Trace* trace = nullptr);
XPoly reduction(const KeyChain& chain, const XPoly& f, int i, int l, Trace* trace = nullptr);
XPoly total_s_building(const KeyChain& chain, const XPoly& f, int s, Trace* trace = nullptr);
UniPoly total_reduction(const KeyChain& chain, const XPoly& f, Trace* trace = nullptr);

}  // namespace valring
