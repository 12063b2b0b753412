#include <random>

#include "doctest.h"
#include "valring/errors.hpp"
#include "valring/expandval.hpp"

using namespace valring;

namespace {

const PadicContext two(2);

KeyChain ex(char which, int depth = 4) {
  switch (which) {
    case 'A': return build_chain(two, UniPoly{3, 0, 1}, BranchSelector::make_unique(), depth, ChainMode::full);
    case 'B': return build_chain(two, UniPoly{1, -1, 1}, BranchSelector::make_unique(), depth, ChainMode::full);
    case 'C': return build_chain(two, UniPoly{7, 0, 1}, BranchSelector::of({{1, 0}}), depth, ChainMode::full);
    default: return build_chain(two, UniPoly{3, 8, 5, 2, 1}, BranchSelector::make_unique(), depth, ChainMode::full);
  }
}

bool has_term(const FullExpansion& e, const Rational& c, const Exponents& x) {
  for (const auto& t : e.terms) {
    if (t.coeff == c && t.exps == x) return true;
  }
  return false;
}

UniPoly random_poly(std::mt19937_64& rng, int deg, long height) {
  std::uniform_int_distribution<long> coef(-height, height);
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) c.push_back(coef(rng));
  return UniPoly(c);
}

}  // namespace

TEST_CASE("truncate examples") {
  auto a = ex('A');
  const UniPoly g = a.generator();
  CHECK(truncate(a, 1, g) == Value(2));
  CHECK(truncate(a, 0, g) == Value(0));
  CHECK(truncate(a, 1, UniPoly{12}) == Value(2));
  CHECK(truncate(a, 0, UniPoly{}).is_infinite());
  CHECK_THROWS_AS(truncate(a, 2, g), Error);
}

TEST_CASE("s_set examples") {
  auto a = ex('A');
  CHECK(s_set(a, 1, a.generator()) == std::vector<int>{0, 1, 2});
  auto c = ex('C');
  CHECK(s_set(c, 1, c.generator()) == std::vector<int>{0, 1});
  CHECK(s_set(c, 2, c.key(2)) == std::vector<int>{1});
}

TEST_CASE("full_expansion examples") {
  auto a = ex('A');
  auto ea = full_expansion(a, 1, a.generator());
  CHECK(ea.terms.size() == 3);
  CHECK(has_term(ea, 4, {{1, 2}}));
  CHECK(has_term(ea, -4, {{1, 1}}));
  CHECK(has_term(ea, 4, {}));
  CHECK(ea.nu == Value(2));
  CHECK(ea.tuple == std::vector<int>{1});

  auto d = ex('D');
  auto ed = full_expansion(d, 1, d.generator());
  CHECK(ed.terms.size() == 3);
  CHECK(has_term(ed, 4, {{1, 2}}));
  CHECK(has_term(ed, 4, {{1, 1}}));
  CHECK(has_term(ed, 4, {{0, 1}}));
  CHECK(ed.nu == Value(2));
  CHECK(ed.tuple == std::vector<int>{1, 0});

  auto e0 = full_expansion(a, 0, UniPoly::x());
  REQUIRE(e0.terms.size() == 1);
  CHECK(has_term(e0, 1, {{0, 1}}));
  CHECK(e0.nu == Value(0));
}

TEST_CASE("expansion_level examples") {
  auto c = ex('C');
  Segmentation sc(c);
  auto e = full_expansion(c, 1, c.normalized(2));
  CHECK(e.tuple == std::vector<int>{1});
  auto lv = expansion_level(sc, e);
  CHECK(lv.neat);
  CHECK(lv.level == 1);

  auto a = ex('A');
  auto la = expansion_level(Segmentation(a), full_expansion(a, 1, a.generator()));
  CHECK(la.neat);
  CHECK(la.level == 0);

  // two infinite plateaus starting at 0 and 10, support offsets 2 and 3
  Segmentation two_inf({{0, 9, 1, PlateauKind::truncated_infinite},
                        {10, 19, 2, PlateauKind::truncated_infinite},
                        {20, 20, 4, PlateauKind::singleton}},
                       20);
  FullExpansion syn;
  syn.anchor = 13;
  syn.terms.push_back({1, {{2, 1}, {13, 1}}});
  auto ls = expansion_level(two_inf, syn);
  CHECK_FALSE(ls.neat);
  syn.terms[0].exps = {{3, 1}, {13, 1}};
  CHECK(expansion_level(two_inf, syn).neat);
  CHECK(expansion_level(two_inf, syn).level == 3);
}

TEST_CASE("make_neat examples") {
  NeatSkeleton single{{true}, {{{0, 2}}, {{0, 2}}}};
  auto r1 = make_neat(single, 2);
  CHECK(r1.dropped.empty());
  CHECK(r1.skeleton.supports == single.supports);

  NeatSkeleton finite{{false, false}, {{}}};
  CHECK(make_neat(finite, 0).dropped.empty());

  NeatSkeleton pair{{true, true}, {{{0, 1}, {1, 4}}}};
  auto r2 = make_neat(pair, 1);
  REQUIRE(r2.dropped.count(1) == 1);
  CHECK(r2.dropped[1] == std::make_pair(1, 4));
  CHECK(r2.skeleton.supports[0].at(0) == 1);
  CHECK(r2.skeleton.supports[0].at(1) == 1);
  CHECK(r2.passes <= 2);
}

TEST_CASE("truncations on random polynomials") {
  std::mt19937_64 rng(17);
  for (char which : {'A', 'B', 'C', 'D'}) {
    auto ch = ex(which);
    NuOracle nu = ch.oracle();
    const int n = ch.generator().degree();
    int last = ch.is_complete() ? ch.size() - 2 : ch.size() - 1;
    std::uniform_int_distribution<int> deg(0, n);
    bool strict = false;
    for (int t = 0; t < 60; ++t) {
      UniPoly f = random_poly(rng, deg(rng), 1 << 16);
      if (f.is_zero()) continue;
      Value prev = truncate(ch, 0, f);
      for (int i = 0; i <= last; ++i) {
        Value vi = truncate(ch, i, f);
        CHECK(vi == ch.mu(i, f));
        CHECK(prev <= vi);
        if (prev < vi) strict = true;
        prev = vi;
        CHECK(s_set(ch, i, f) == s_set(ch, i, f, true));
      }
      Value vf = nu(f);
      CHECK(prev <= vf);
      if (prev < vf) strict = true;
      UniPoly h = random_poly(rng, 1, 50);
      if (!h.is_zero()) CHECK(truncate(ch, last, f * h) == truncate(ch, last, f) + truncate(ch, last, h));
    }
    CHECK(strict);
  }
}

TEST_CASE("full expansions on random polynomials") {
  std::mt19937_64 rng(23);
  for (char which : {'A', 'B', 'C', 'D'}) {
    auto ch = ex(which);
    const int n = ch.generator().degree();
    int last = ch.is_complete() ? ch.size() - 2 : ch.size() - 1;
    std::uniform_int_distribution<int> deg(0, 2 * n);
    std::uniform_int_distribution<int> pos(0, last);
    for (int t = 0; t < 40; ++t) {
      UniPoly f = random_poly(rng, deg(rng), 1 << 16);
      if (f.is_zero()) continue;
      const int i = pos(rng);
      FullExpansion e = full_expansion(ch, i, f);
      auto bad = check_full_expansion(ch, e, f);
      CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
      FullExpansion r = expansion_from_tuple(ch, i, f, e.tuple);
      CHECK(r.terms.size() == e.terms.size());
      for (const auto& term : e.terms) CHECK(has_term(r, term.coeff, term.exps));
    }
  }
}
