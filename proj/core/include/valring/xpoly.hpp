#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "valring/rational.hpp"
#include "valring/upoly.hpp"

namespace valring {

/// Exponent of X_k at index k, trailing zeros trimmed.
using Monomial = std::vector<int>;

int monomial_degree(const Monomial& m);

/// Polynomial over Q in the variables X_0, X_1, ...
/// Terms are kept in lexicographic order of exponent vectors.
class XPoly {
 public:
  XPoly() = default;

  static XPoly constant(const Rational& c);
  static XPoly var(int k, int e = 1);
  static XPoly term(const Rational& c, Monomial m);
  /// f(X_k)
  static XPoly from_univariate(const UniPoly& f, int k);

  const std::map<Monomial, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  Rational coeff(const Monomial& m) const;

  int deg_in(int k) const;
  int total_degree() const;
  /// Largest k with X_k present, -1 for constants.
  int top_variable() const;
  std::vector<int> variables() const;
  bool is_integral() const;

  XPoly& operator+=(const XPoly& o);
  XPoly& operator-=(const XPoly& o);
  XPoly& operator*=(const XPoly& o);
  XPoly& operator*=(const Rational& s);
  friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
  friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  friend XPoly operator*(XPoly a, const Rational& s) { return a *= s; }
  friend XPoly operator*(const Rational& s, XPoly a) { return a *= s; }
  XPoly operator-() const;
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.t_ == b.t_; }

  XPoly pow(unsigned n) const;

  /// Coefficients in X_k: result[j] is free of X_k and the sum of result[j] X_k^j is *this.
  std::vector<XPoly> split(int k) const;
  static XPoly join(const std::vector<XPoly>& parts, int k);

  XPoly substitute(int k, const XPoly& by) const;
  /// Substitutes at[k] for X_k.
  UniPoly evaluate(const std::vector<UniPoly>& at) const;

  /// Highest variable first, e.g. "2*X1 - X0 - 1".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> t_;
};

/// Parses sums of terms such as "2*X1^2 - 3/4*X0*X1 + 1".
XPoly parse_xpoly(std::string_view text);
/// Parses a polynomial in x, e.g. "x^2 + 3" or "1/2*x + 1/2".
UniPoly parse_upoly(std::string_view text);

/// Minimum coefficient value; zero polynomial rejected.
Value mu0(const PadicContext& ctx, const XPoly& f);

}  // namespace valring
