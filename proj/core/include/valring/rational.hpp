#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace valring {

using Integer = mpz_class;
/// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den = 1);
/// Parses "n" or "n/d" (decimal, optional sign). Throws Error(parse_error).
Rational parse_rational(std::string_view text);
/// "n" when the denominator is 1, else "n/d".
std::string to_string(const Rational& q);
bool is_integral(const Rational& q);
Rational rpow(const Rational& base, unsigned long e);

/// An element of Q u {inf}.
class Value {
 public:
  Value() : infinite_(true) {}
  Value(const Rational& q) : infinite_(false), q_(q) {}  // NOLINT
  Value(long n) : infinite_(false), q_(n) {}              // NOLINT

  static Value infinity() { return Value(); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Precondition: finite.
  const Rational& rational() const;
  bool is_integer() const { return infinite_ || q_.get_den() == 1; }
  /// Precondition: finite integer value that fits a long.
  long to_long() const;

  friend Value operator+(const Value& a, const Value& b);
  friend Value operator-(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  bool infinite_;
  Rational q_;
};

Value min(const Value& a, const Value& b);
/// "inf" or the rational text.
std::string to_string(const Value& v);
Value parse_value(std::string_view text);
std::ostream& operator<<(std::ostream& os, const Value& v);

/// The valued base field (Q, v_p) with v(p) = 1 and residue field F_p.
class PadicContext {
 public:
  /// Throws Error(not_prime) unless p is a prime >= 2 below 2^31.
  explicit PadicContext(long p);

  long prime() const { return p_; }
  const Integer& prime_integer() const { return pz_; }

  Value pval(const Rational& a) const;
  /// v_p of a nonzero integer.
  long pval(const Integer& a) const;
  /// p^e for any integer e (negative allowed).
  Rational power(long e) const;
  /// Residue of an element of value >= 0, in [0, p).
  long residue(const Rational& a) const;

  friend bool operator==(const PadicContext& a, const PadicContext& b) {
    return a.p_ == b.p_;
  }

 private:
  long p_;
  Integer pz_;
};

bool is_prime(long n);

}  // namespace valring
