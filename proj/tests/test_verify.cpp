#include <functional>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "valring/errors.hpp"
#include "valring/expandval.hpp"
#include "valring/verify.hpp"

using namespace valring;
using testing_support::ex;
using testing_support::random_poly;
using testing_support::random_xpoly;
using testing_support::two;
using testing_support::X;

namespace {

Reason reason_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.reason();
  }
  return Reason::internal_error;
}

}  // namespace

TEST_CASE("evaluation maps") {
  auto a = ex('A');
  CHECK(eval_e(a, X("2*X1 - X0 - 1")).is_zero());
  CHECK(eval_e(a, X("X1^2 - X1 + 1")) == UniPoly(std::vector<Rational>{Rational(3, 4), 0, Rational(1, 4)}));
  CHECK(eval_e(a, X("7/3")) == UniPoly::constant(Rational(7, 3)));
  CHECK(eval_eta(a, X("X1^2 - X1 + 1")).is_zero);
  auto x0 = eval_eta(a, X("X0"));
  CHECK_FALSE(x0.is_zero);
  CHECK(x0.value == Value(0));
  CHECK(eval_eta(ex('C'), X("2*X1^2 - X1 + 1")).is_zero);
}

TEST_CASE("relation reports") {
  for (char w : {'A', 'B', 'C', 'D'}) {
    CAPTURE(w);
    auto rep = check_relations(ex(w));
    CHECK(rep.passed());
  }
  auto bad = check_relations(ex('A').rescaled(1, 1));
  CHECK_FALSE(bad.passed());
  REQUIRE(bad.find("mu0") != nullptr);
  CHECK_FALSE(bad.find("mu0")->passed);
}

TEST_CASE("completeness probe") {
  auto a = ex('A');
  auto r = completeness_probe(a, UniPoly{5, 1});
  REQUIRE(r.witness);
  CHECK(*r.witness == 1);
  CHECK(r.nu == Value(1));
  CHECK(completeness_probe(a, UniPoly{6}).witness == 0);
  auto c4 = completeness_probe(ex('C', 4), UniPoly{-75, 1});
  CHECK_FALSE(c4.witness);
  CHECK(c4.nu == Value(8));
  auto c6 = completeness_probe(ex('C', 6), UniPoly{-75, 1});
  REQUIRE(c6.witness);
  CHECK(c6.truncated == Value(8));

  std::mt19937_64 rng(77);
  for (char w : {'A', 'B', 'D'}) {
    auto chain = ex(w);
    for (int t = 0; t < 50; ++t) {
      UniPoly f = random_poly(rng, 1 + static_cast<int>(rng() % 5), 1L << 16);
      if (f.is_zero()) continue;
      auto res = completeness_probe(chain, f);
      REQUIRE(res.witness);
      CHECK(res.truncated == res.nu);
      CHECK(*res.witness <= chain.imax());
      const int dq = *res.witness == chain.imax() ? chain.generator().degree() : chain.degree(*res.witness);
      CHECK(dq <= std::max(f.degree(), 1));
    }
  }
}

TEST_CASE("integral representation") {
  auto a = ex('A');
  CHECK(integral_rep(a, UniPoly{0, 1}) == X("X0"));
  CHECK(integral_rep(a, UniPoly(std::vector<Rational>{Rational(1, 2), Rational(1, 2)})) == X("X1"));
  auto d = ex('D');
  CHECK(integral_rep(d, UniPoly(std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1, 2)})) == X("X1"));
  CHECK(reason_of([&] { integral_rep(a, UniPoly(std::vector<Rational>{Rational(1, 2)})); }) == Reason::malformed_input);

  std::mt19937_64 rng(99);
  for (char w : {'A', 'B', 'D'}) {
    auto chain = ex(w);
    const int n = chain.generator().degree();
    int done = 0;
    for (int t = 0; t < 400 && done < 40; ++t) {
      // random integral element of some order, divided by a power of p
      UniPoly h = random_poly(rng, n - 1, 1L << 12);
      if (h.is_zero()) continue;
      const Value v = chain.nu(h);
      if (v.is_infinite()) continue;
      h *= two().power(-v.to_long());
      XPoly rep = integral_rep(chain, h);
      CHECK(rep.is_integral());
      CHECK(eval_e(chain, rep) % chain.generator() == h % chain.generator());
      ++done;
    }
    CHECK(done == 40);
  }
}

TEST_CASE("membership examples") {
  auto a = ex('A');
  XPoly f = X("2*X1 - X0 - 1") + X("X0") * X("X1^2 - X1 + 1");
  auto cert = membership(a, f);
  CHECK(check_certificate(cert).empty());
  CHECK(cert.denominators.empty());
  auto one = membership(a, X("X1^2 - X1 + 1"));
  CHECK(check_certificate(one).empty());
  CHECK(one.i2_cofactor == X("1"));
  CHECK(one.combination.empty());
  CHECK(reason_of([&] { membership(a, X("X0")); }) == Reason::not_in_ideal);
  CHECK(membership(a, XPoly()).combination.empty());
}

TEST_CASE("membership of random ideal elements") {
  std::mt19937_64 rng(4242);
  struct Ctx {
    char name;
    std::vector<int> vars;
  };
  for (const Ctx& ctx : {Ctx{'A', {0, 1}}, Ctx{'B', {0}}, Ctx{'C', {0, 1, 2}}, Ctx{'D', {0, 1}}}) {
    CAPTURE(ctx.name);
    auto chain = ex(ctx.name);
    auto gs = ideal_generators(chain);
    std::vector<XPoly> gens;
    for (const auto& r : gs.i1) gens.push_back(r.generator());
    for (const auto& r : gs.i2) gens.push_back(r.generator());
    for (int t = 0; t < 15; ++t) {
      XPoly f;
      for (int k = 0; k < 2; ++k) {
        const XPoly& g = gens[rng() % gens.size()];
        f += random_xpoly(rng, ctx.vars, 2, 2, 20) * g;
      }
      CAPTURE(f.to_string());
      auto cert = membership(chain, f);
      CHECK(check_certificate(cert).empty());
      CHECK(cert.denominators.empty());
    }
    for (int t = 0; t < 15; ++t) {
      XPoly f = random_xpoly(rng, ctx.vars, 3, 2, 20);
      if (f.is_zero() || eval_eta(chain, f).is_zero) continue;
      CHECK(reason_of([&] { membership(chain, f); }) == Reason::not_in_ideal);
    }
  }
}
