#include "valring/rational.hpp"

#include "valring/errors.hpp"

namespace valring {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(Reason::malformed_input, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw Error(Reason::parse_error,
                "expected digits in rational '" + std::string(whole) + "'");
  }
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw Error(Reason::parse_error,
                  "unexpected character '" + std::string(1, text[j]) +
                      "' at offset " + std::to_string(j) + " in rational '" +
                      std::string(whole) + "'");
    }
  }
  Integer z(std::string(text.substr(i)), 10);
  return neg ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw Error(Reason::parse_error,
                "zero denominator in '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Rational rpow(const Rational& base, unsigned long e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  return make_rational(n, d);
}

const Rational& Value::rational() const {
  if (infinite_) throw Error(Reason::internal_error, "rational() of infinite value");
  return q_;
}

long Value::to_long() const {
  if (infinite_ || q_.get_den() != 1 || !q_.get_num().fits_slong_p()) {
    throw Error(Reason::internal_error, "value is not a small integer");
  }
  return q_.get_num().get_si();
}

Value operator+(const Value& a, const Value& b) {
  if (a.infinite_ || b.infinite_) return Value::infinity();
  return Value(Rational(a.q_ + b.q_));
}

Value operator-(const Value& a, const Value& b) {
  if (b.infinite_) throw Error(Reason::internal_error, "subtracting infinity");
  if (a.infinite_) return Value::infinity();
  return Value(Rational(a.q_ - b.q_));
}

bool operator==(const Value& a, const Value& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.q_ == b.q_;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
  if (a.infinite_) return std::strong_ordering::greater;
  if (b.infinite_) return std::strong_ordering::less;
  int c = cmp(a.q_, b.q_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Value min(const Value& a, const Value& b) { return b < a ? b : a; }

std::string to_string(const Value& v) {
  return v.is_infinite() ? std::string("inf") : to_string(v.rational());
}

Value parse_value(std::string_view text) {
  if (text == "inf") return Value::infinity();
  return Value(parse_rational(text));
}

std::ostream& operator<<(std::ostream& os, const Value& v) {
  return os << to_string(v);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PadicContext::PadicContext(long p) : p_(p), pz_(p) {
  if (p >= (1L << 31) || !is_prime(p)) {
    throw Error(Reason::not_prime, std::to_string(p) + " is not a supported prime");
  }
}

long PadicContext::pval(const Integer& a) const {
  if (a == 0) throw Error(Reason::internal_error, "pval of zero integer");
  return static_cast<long>(mpz_remove(Integer().get_mpz_t(), a.get_mpz_t(),
                                      pz_.get_mpz_t()));
}

Value PadicContext::pval(const Rational& a) const {
  if (a == 0) return Value::infinity();
  long vn = pval(Integer(a.get_num()));
  long vd = pval(Integer(a.get_den()));
  return Value(vn - vd);
}

Rational PadicContext::power(long e) const {
  Integer z;
  mpz_pow_ui(z.get_mpz_t(), pz_.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  if (e < 0) return make_rational(1, z);
  return Rational(z);
}

long PadicContext::residue(const Rational& a) const {
  if (pval(a) < Value(0)) {
    throw Error(Reason::internal_error, "residue of a non-integral element");
  }
  Integer den(a.get_den());
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz_.get_mpz_t());
  Integer r = Integer(a.get_num()) * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pz_.get_mpz_t());
  return r.get_si();
}

}  // namespace valring
