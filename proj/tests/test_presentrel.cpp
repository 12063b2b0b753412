#include "doctest.h"
#include "support.hpp"
#include "valring/errors.hpp"
#include "valring/presentrel.hpp"
#include "valring/rewrite.hpp"

using namespace valring;
using testing_support::ex;
using testing_support::two;
using testing_support::X;

namespace {

std::vector<XPoly> gens(const std::vector<RelationGen>& v) {
  std::vector<XPoly> out;
  for (const auto& r : v) out.push_back(r.generator());
  return out;
}

// Independent evaluation: substitute Qtilde_k by Horner per variable.
UniPoly substitute(const KeyChain& chain, const XPoly& f) {
  XPoly cur = f;
  for (int k = cur.top_variable(); k >= 1; --k) {
    std::vector<XPoly> parts = cur.split(k);
    XPoly q = XPoly::from_univariate(chain.normalized(k), 0);
    XPoly acc;
    for (std::size_t j = parts.size(); j-- > 0;) acc = acc * q + parts[j];
    cur = acc;
  }
  return cur.evaluate({UniPoly::x()});
}

}  // namespace

TEST_CASE("xpoly parsing and printing") {
  XPoly f = X("2*X1 - X0 - 1");
  CHECK(f.size() == 3);
  CHECK(f.to_string() == "2*X1 - X0 - 1");
  CHECK(X("X0X1^2 + 3/4") == X("3/4 + X1^2*X0"));
  CHECK(X("X1 - X1").is_zero());
  CHECK(X("4*X1^2 - 4*X1 + 1").deg_in(1) == 2);
  CHECK(parse_upoly("x^2 + 3") == UniPoly{3, 0, 1});
  CHECK_THROWS_AS(X("2**X1"), Error);
  CHECK_THROWS_AS(X(""), Error);
  CHECK(mu0(two(), X("4*X1^2 - 4*X1 + 1")) == Value(0));
  CHECK(mu0(two(), X("8")) == Value(3));
  CHECK(mu0(two(), X("32*X3^2 + 11*X3 + 1")) == Value(0));
}

TEST_CASE("relation examples") {
  auto a = ex('A');
  auto r10 = relation(a, 1, 0);
  CHECK(r10.b == 2);
  CHECK(r10.q == X("X0 + 1"));
  CHECK(r10.generator() == X("2*X1 - X0 - 1"));
  auto r21 = relation(a, 2, 1);
  CHECK(r21.kind == RelKind::I2);
  CHECK(r21.b == Rational(1, 4));
  CHECK(r21.q == X("X1^2 - X1 + 1"));
  auto d = ex('D');
  auto d21 = relation(d, 2, 1);
  CHECK(d21.b == Rational(1, 4));
  CHECK(d21.q == X("X1^2 + X1 + X0"));
  CHECK_THROWS_AS(relation(a, 2, 0), Error);
}

TEST_CASE("ideal generators of the worked chains") {
  auto b = ex('B');
  auto gb = ideal_generators(b);
  CHECK(gb.i1.empty());
  CHECK(gens(gb.i2) == std::vector<XPoly>{X("X0^2 - X0 + 1")});

  auto a = ex('A');
  auto ga = ideal_generators(a);
  CHECK(gens(ga.i1) == std::vector<XPoly>{X("2*X1 - X0 - 1")});
  CHECK(gens(ga.i2) == std::vector<XPoly>{X("X1^2 - X1 + 1")});
  auto ac = ex('A', 4, ChainMode::collapsed);
  auto gac = ideal_generators(ac);
  CHECK(gac.i1.empty());
  CHECK(gens(gac.i2) == std::vector<XPoly>{X("X0^2 - X0 + 1")});

  auto d = ex('D');
  auto gd = ideal_generators(d);
  CHECK(gens(gd.i1) == std::vector<XPoly>{X("2*X1 - X0^2 - X0 - 1")});
  CHECK(gens(gd.i2) == std::vector<XPoly>{X("X1^2 + X1 + X0")});

  auto c = ex('C', 4);
  auto gc = ideal_generators(c);
  CHECK(gens(gc.i1) == std::vector<XPoly>{X("4*X1 - X0 - 1"), X("2*X2 - X1 + 1"), X("8*X3 - X2 + 1")});
  CHECK(gens(gc.i2) == std::vector<XPoly>{X("X0^2 + 7"), X("2*X1^2 - X1 + 1"), X("4*X2^2 + 3*X2 + 1"),
                                          X("32*X3^2 + 11*X3 + 1")});
  std::vector<long> vb;
  for (const auto& r : gc.i2) vb.push_back(two().pval(r.b).to_long());
  CHECK(vb == std::vector<long>{0, -3, -4, -7});
  CHECK(gc.i1_below(2).size() == 1);
  CHECK(gc.i1_upto(2).size() == 2);
  CHECK(gc.i2_below(2).size() == 2);
  CHECK(gc.i2_upto(0).size() == 1);
  // I_{2l} vanishes below the start of the final plateau
  CHECK(gd.i2_upto(0).empty());
}

TEST_CASE("relation invariants on every chain") {
  for (char w : {'A', 'B', 'C', 'D'}) {
    for (int depth : {4, 6}) {
      if (w != 'C' && depth == 6) continue;
      auto chain = ex(w, depth);
      CAPTURE(w);
      Rewriter rw(chain);
      auto gs = ideal_generators(chain);
      for (const auto& r : gs.i1) {
        CHECK(mu0(two(), r.q) == Value(0));
        CHECK(two().pval(r.b) > Value(0));
        CHECK(substitute(chain, r.generator()).is_zero());
        CHECK(rw.is_neat(r.q).neat);
        if (rw.segmentation().much_less(r.source, r.target)) {
          // only the pure power X_i^r can exceed the degree bound
          for (const auto& v : rw.is_neat(r.generator()).violations) {
            CHECK(v == "condition (3): degree in X" + std::to_string(r.source));
          }
        }
      }
      for (const auto& r : gs.i2) {
        CHECK(mu0(two(), r.q) == Value(0));
        CHECK(substitute(chain, r.q) == chain.generator() * r.b);
        CHECK(rw.is_neat(r.q).neat);
      }
    }
  }
}

TEST_CASE("plateau relations") {
  auto c = ex('C');
  auto p1 = plateau_relation(c, 1);
  CHECK(p1.b == 2);
  CHECK(p1.a == X("-1"));
  auto p2 = plateau_relation(c, 2);
  CHECK(p2.b == 8);
  CHECK(p2.a == X("-1"));
  auto a = ex('A');
  auto p0 = plateau_relation(a, 0);
  CHECK(p0.b == 2);
  CHECK(p0.a == X("1"));
  CHECK_THROWS_AS(plateau_relation(ex('D'), 0), Error);
  for (int i = 0; i < 3; ++i) {
    auto p = plateau_relation(c, i);
    CHECK(c.normalized(i + 1) * p.b == c.normalized(i) + substitute(c, p.a));
    CHECK(p.a.top_variable() < 0);
  }
}

TEST_CASE("redundancy certificates") {
  auto c = ex('C');
  auto cert = redundancy_cofactor(c, 2, 3);
  CHECK(cert.verified);
  CHECK(cert.c0 == 8);
  REQUIRE(cert.terms.size() == 1);
  CHECK(cert.terms[0].gen.generator() == X("8*X3 - X2 + 1"));
  CHECK(cert.terms[0].cofactor == X("-4*X2 - 32*X3 - 7"));
  // the certificate as printed
  XPoly lhs = X("4*X2^2 + 3*X2 + 1");
  CHECK(lhs == X("32*X3^2 + 11*X3 + 1") * Rational(8) - X("4*X2 + 32*X3 + 7") * X("8*X3 - X2 + 1"));

  auto c12 = redundancy_cofactor(c, 1, 2);
  CHECK(c12.verified);
  CHECK(c12.c0 == 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      auto r = redundancy_cofactor(c, i, j);
      CHECK(r.verified);
      CHECK(two().pval(r.c0) >= Value(0));
      for (const auto& t : r.terms) CHECK(t.cofactor.is_integral());
    }
  }
  CHECK_THROWS_AS(redundancy_cofactor(c, 1, 1), Error);
  CHECK_THROWS_AS(redundancy_cofactor(ex('A'), 0, 1), Error);
}

TEST_CASE("generator re-expression along a plateau") {
  auto c = ex('C', 6);
  Rewriter rw(c);
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      // X_i = c X_j + combination, by building X_i up to offset j
      Trace t;
      XPoly built = rw.total_s_building(XPoly::var(i), j, &t);
      REQUIRE(built.top_variable() == j);
      CHECK(built.deg_in(j) == 1);
      const Rational cj = built.coeff(XPoly::var(j).terms().begin()->first);
      CHECK(two().pval(cj) > Value(0));
      CHECK(XPoly::var(i) == built + rw.replay(t));
    }
  }
}
