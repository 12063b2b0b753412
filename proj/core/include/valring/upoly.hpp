#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "valring/rational.hpp"

namespace valring {

/// Univariate polynomial over Q, little-endian, no trailing zeros stored.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(std::initializer_list<long> coeffs);

  static UniPoly constant(const Rational& c);
  static UniPoly x();
  /// c * x^n
  static UniPoly monomial(const Rational& c, int n);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Coefficient of x^n (zero beyond the degree).
  Rational coeff(int n) const;
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_constant() const { return c_.size() <= 1; }

  Rational operator()(const Rational& at) const;
  UniPoly derivative() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const Rational& s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
  UniPoly operator-() const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly pow(unsigned n) const;

  /// Euclidean division over Q: *this = quot * d + rem, deg rem < deg d.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }
  bool divisible_by(const UniPoly& d) const { return divmod(d).second.is_zero(); }

  /// Least common denominator of the coefficients (1 for zero).
  Integer denominator() const;

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// (f_0, ..., f_n) with f = sum f_j q^j and deg f_j < deg q.
/// Throws Error(malformed_divisor) unless q is monic of degree >= 1.
/// The zero polynomial expands to the empty sequence.
std::vector<UniPoly> qexpand(const UniPoly& f, const UniPoly& q);

/// sum_j parts[j] * q^j
UniPoly qcompose(const std::vector<UniPoly>& parts, const UniPoly& q);

/// Res_x(f, g) by fraction-free (Bareiss) elimination of the Sylvester matrix
/// after clearing denominators. Throws Error(undefined_resultant) on zero input.
Rational resultant(const UniPoly& f, const UniPoly& g);

}  // namespace valring
