#include "valring/oracle.hpp"

#include "valring/errors.hpp"

namespace valring {

namespace {

Integer eval_integer(const UniPoly& f, const Integer& at) {
  Integer acc = 0;
  const auto& c = f.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * at + Integer(it->get_num());
  return acc;
}

Integer ppow(const PadicContext& ctx, long e) {
  Integer z;
  mpz_pow_ui(z.get_mpz_t(), ctx.prime_integer().get_mpz_t(), static_cast<unsigned long>(e));
  return z;
}

long val_or(const PadicContext& ctx, const Integer& a, long cap) {
  if (a == 0) return cap;
  return std::min(ctx.pval(a), cap);
}

}  // namespace

ResidueClass hensel_root(const PadicContext& ctx, const UniPoly& g, const ResidueClass& seed,
                         long precision) {
  if (!g.is_monic() || g.denominator() != 1) {
    throw Error(Reason::no_convergence, "Hensel lifting needs a monic integral polynomial");
  }
  if (precision < 1) throw Error(Reason::malformed_input, "precision must be positive");
  const UniPoly dg = g.derivative();
  Integer r = seed.rep;
  Integer gr = eval_integer(g, r);
  Integer dr = eval_integer(dg, r);
  if (dr == 0) throw Error(Reason::no_convergence, "seed is a critical point of g");
  const long k = ctx.pval(dr);
  if (gr != 0 && ctx.pval(gr) <= 2 * k) {
    throw Error(Reason::no_convergence, "seed " + r.get_str() + " is not Hensel-liftable");
  }
  const long work = precision + k + 1;
  const Integer modulus = ppow(ctx, work);
  const Integer pk = ppow(ctx, k);
  for (int iter = 0; iter < 256; ++iter) {
    gr = eval_integer(g, r);
    if (gr == 0 || ctx.pval(gr) - k >= precision) {
      Integer out = r;
      Integer mod_n = ppow(ctx, precision);
      mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), mod_n.get_mpz_t());
      return {out, precision};
    }
    dr = eval_integer(dg, r);
    Integer num = gr / pk;
    Integer unit = dr / pk;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
    r -= num * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  }
  throw Error(Reason::no_convergence, "Newton iteration did not converge");
}

std::string Branch::describe() const {
  switch (kind_) {
    case Kind::unique: return "unique";
    case Kind::rational_root:
      return "root " + seed_.rep.get_str() + " mod p^" + std::to_string(seed_.exponent);
    case Kind::unresolved: return "unresolved";
  }
  return "unresolved";
}

std::string_view method_name(OracleMethod m) {
  switch (m) {
    case OracleMethod::exact_zero: return "exact-zero";
    case OracleMethod::resultant: return "resultant";
    case OracleMethod::hensel: return "hensel";
  }
  return "unknown";
}

NuOracle::NuOracle(PadicContext ctx, UniPoly g, Branch branch)
    : ctx_(ctx), g_(std::move(g)), branch_(std::move(branch)) {}

OracleValue NuOracle::evaluate(const UniPoly& h) const {
  if (h.is_zero() || h.divisible_by(g_)) return {Value::infinity(), OracleMethod::exact_zero};
  if (h.is_constant()) return {ctx_.pval(h.coeff(0)), OracleMethod::exact_zero};
  switch (branch_.kind()) {
    case Branch::Kind::unique: {
      Rational res = resultant(g_, h);
      Value v = ctx_.pval(res);
      return {Value(Rational(v.rational() / g_.degree())), OracleMethod::resultant};
    }
    case Branch::Kind::rational_root: {
      const Integer den = h.denominator();
      const long vden = ctx_.pval(den);
      const UniPoly hi = h * Rational(den);
      for (long n = 32; n <= (1L << 14); n *= 2) {
        ResidueClass r = hensel_root(ctx_, g_, branch_.seed(), n);
        Integer hv = eval_integer(hi, r.rep);
        Integer mod_n = ppow(ctx_, n);
        mpz_fdiv_r(hv.get_mpz_t(), hv.get_mpz_t(), mod_n.get_mpz_t());
        long v = val_or(ctx_, hv, n);
        if (v < n - kMargin) return {Value(v - vden), OracleMethod::hensel};
      }
      throw Error(Reason::oracle_unavailable, "Hensel precision cap reached");
    }
    case Branch::Kind::unresolved: break;
  }
  throw Error(Reason::oracle_unavailable,
              "no certified method for this branch (extension not unique and root not in Z_p)");
}

}  // namespace valring
