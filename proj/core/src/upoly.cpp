#include "valring/upoly.hpp"

#include "valring/errors.hpp"

namespace valring {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

UniPoly::UniPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) c_.emplace_back(c);
  trim();
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::x() { return UniPoly{0, 1}; }

UniPoly UniPoly::monomial(const Rational& c, int n) {
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::coeff(int n) const {
  if (n < 0 || n >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(n)];
}

const Rational& UniPoly::leading() const {
  if (c_.empty()) throw Error(Reason::zero_polynomial, "leading coefficient of zero");
  return c_.back();
}

Rational UniPoly::operator()(const Rational& at) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly UniPoly::pow(unsigned n) const {
  UniPoly result = constant(1);
  UniPoly base = *this;
  while (n) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n) base *= base;
  }
  return result;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw Error(Reason::malformed_divisor, "division by zero polynomial");
  std::vector<Rational> rem = c_;
  int dd = d.degree();
  if (degree() < dd) return {UniPoly(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
  Rational lead_inv = 1 / d.leading();
  for (int k = degree(); k >= dd; --k) {
    Rational c = rem[static_cast<std::size_t>(k)] * lead_inv;
    if (c == 0) continue;
    quot[static_cast<std::size_t>(k - dd)] = c;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k - dd + j)] -= c * d.c_[static_cast<std::size_t>(j)];
    }
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

Integer UniPoly::denominator() const {
  Integer l = 1;
  for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

std::string UniPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    bool unit = a == 1;
    if (!unit || k == 0) out += valring::to_string(a);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::vector<UniPoly> qexpand(const UniPoly& f, const UniPoly& q) {
  if (q.degree() < 1 || !q.is_monic()) {
    throw Error(Reason::malformed_divisor, "q-expansion needs a monic divisor of degree >= 1");
  }
  std::vector<UniPoly> parts;
  UniPoly rest = f;
  while (!rest.is_zero()) {
    auto [quot, rem] = rest.divmod(q);
    parts.push_back(std::move(rem));
    rest = std::move(quot);
  }
  return parts;
}

UniPoly qcompose(const std::vector<UniPoly>& parts, const UniPoly& q) {
  UniPoly acc;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) acc = acc * q + *it;
  return acc;
}

namespace {

// Bareiss fraction-free determinant of an integer matrix.
Integer bareiss_det(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<Integer> integer_coeffs(const UniPoly& f, const Integer& scale) {
  std::vector<Integer> out;
  for (const auto& c : f.coeffs()) {
    Rational s = c * scale;
    out.push_back(s.get_num());
  }
  return out;
}

}  // namespace

Rational resultant(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() || g.is_zero()) {
    throw Error(Reason::undefined_resultant, "resultant with a zero polynomial");
  }
  const int m = f.degree();
  const int n = g.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) return rpow(f.coeff(0), static_cast<unsigned long>(n));
  if (n == 0) return rpow(g.coeff(0), static_cast<unsigned long>(m));
  Integer df = f.denominator();
  Integer dg = g.denominator();
  auto fi = integer_coeffs(f, df);
  auto gi = integer_coeffs(g, dg);
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Integer>> syl(size, std::vector<Integer>(size, 0));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j <= m; ++j) {
      syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] =
          fi[static_cast<std::size_t>(m - j)];
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) {
      syl[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + j)] =
          gi[static_cast<std::size_t>(n - j)];
    }
  }
  Integer det = bareiss_det(std::move(syl));
  // Res(df f, dg g) = df^n dg^m Res(f, g)
  Integer scale;
  Integer a, b;
  mpz_pow_ui(a.get_mpz_t(), df.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(b.get_mpz_t(), dg.get_mpz_t(), static_cast<unsigned long>(m));
  scale = a * b;
  return make_rational(det, scale);
}

}  // namespace valring
