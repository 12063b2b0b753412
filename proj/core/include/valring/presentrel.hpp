#pragma once

#include <string>
#include <utility>
#include <vector>

#include "valring/expandval.hpp"
#include "valring/keychain.hpp"
#include "valring/xpoly.hpp"

namespace valring {

enum class RelKind { I1, I2 };
std::string_view rel_kind_name(RelKind k);

/// Q_{li} = b * (full i-th expansion of Qtilde_l, or of g when l = i_max) in the X variables.
struct RelationGen {
  RelKind kind = RelKind::I1;
  int target = 0;  // l, or i_max
  int source = 0;  // i
  Rational b;
  XPoly q;
  int level = 0;
  int r = 1;  // deg Q_l / deg Q_i

  /// b X_l - Q_{li} for I1, Q_{imax,i} for I2.
  XPoly generator() const;
  /// Q_{li} / b, the body substituted for X_l.
  XPoly body() const;
};

struct GeneratorSet {
  std::vector<RelationGen> i1;
  std::vector<RelationGen> i2;

  // filters by target position (I1) or source position (I2)
  std::vector<RelationGen> i1_upto(int l) const;
  std::vector<RelationGen> i1_below(int l) const;
  std::vector<RelationGen> i2_upto(int l) const;
  std::vector<RelationGen> i2_below(int l) const;
};

/// b_{i+1,i} Qtilde_{i+1} = Qtilde_i + A_i inside one plateau.
struct PlateauRel {
  int position = 0;
  Rational b;
  XPoly a;
};

RelationGen relation(const KeyChain& chain, int l, int i);
GeneratorSet ideal_generators(const KeyChain& chain);
PlateauRel plateau_relation(const KeyChain& chain, int i);

struct CofactorTerm {
  RelationGen gen;
  XPoly cofactor;
};

/// Q_{imax,i} = c0 Q_{imax,i'} + sum cofactor * generator.
struct RedundancyCert {
  int i = 0;
  int i2 = 0;
  Rational c0;
  std::vector<CofactorTerm> terms;
  bool verified = false;
};

RedundancyCert redundancy_cofactor(const KeyChain& chain, int i, int i2);

}  // namespace valring
