#include "valring/xpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "valring/errors.hpp"

namespace valring {

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

int exp_at(const Monomial& m, int k) {
  return k < static_cast<int>(m.size()) ? m[static_cast<std::size_t>(k)] : 0;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return r;
}

// Display order: compare from the highest variable down.
bool display_before(const Monomial& a, const Monomial& b) {
  const int n = static_cast<int>(std::max(a.size(), b.size()));
  for (int k = n - 1; k >= 0; --k) {
    const int x = exp_at(a, k), y = exp_at(b, k);
    if (x != y) return x > y;
  }
  return false;
}

// Recursive-descent reader for sums of products of numbers and variables.
class TermReader {
 public:
  TermReader(std::string_view text, bool univariate) : s_(text), uni_(univariate) {}

  std::vector<std::pair<Rational, Monomial>> read() {
    std::vector<std::pair<Rational, Monomial>> out;
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [c, m] = term();
      out.emplace_back(sign * c, std::move(m));
      skip();
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Reason::parse_error, what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  long integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  std::pair<Rational, Monomial> term() {
    Rational c = 1;
    Monomial m;
    bool any = false;
    while (true) {
      skip();
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (peek() == '/') {
          ++pos_;
          if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        c *= parse_rational(s_.substr(start, pos_ - start));
      } else if ((uni_ && ch == 'x') || (!uni_ && (ch == 'X' || ch == 'T'))) {
        ++pos_;
        int k = 0;
        if (!uni_) {
          if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a variable index");
          k = static_cast<int>(integer());
        }
        skip();
        int e = 1;
        if (peek() == '^') {
          ++pos_;
          skip();
          e = static_cast<int>(integer());
        }
        if (m.size() <= static_cast<std::size_t>(k)) m.resize(static_cast<std::size_t>(k) + 1, 0);
        m[static_cast<std::size_t>(k)] += e;
      } else {
        fail("expected a factor");
      }
      any = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      const char nx = peek();
      if (std::isdigit(static_cast<unsigned char>(nx)) || nx == 'x' || nx == 'X' || nx == 'T') continue;
      break;
    }
    if (!any) fail("expected a term");
    trim(m);
    return {c, m};
  }

  std::string_view s_;
  bool uni_;
  std::size_t pos_ = 0;
};

}  // namespace

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

XPoly XPoly::constant(const Rational& c) { return term(c, {}); }

XPoly XPoly::var(int k, int e) {
  if (k < 0 || e < 0) throw Error(Reason::malformed_input, "negative variable index or exponent");
  Monomial m(static_cast<std::size_t>(k) + 1, 0);
  m[static_cast<std::size_t>(k)] = e;
  return term(1, std::move(m));
}

XPoly XPoly::term(const Rational& c, Monomial m) {
  XPoly r;
  trim(m);
  r.add_term(m, c);
  return r;
}

XPoly XPoly::from_univariate(const UniPoly& f, int k) {
  XPoly r;
  for (int j = 0; j <= f.degree(); ++j) {
    if (f.coeff(j) == 0) continue;
    r += term(f.coeff(j), j == 0 ? Monomial{} : var(k, j).t_.begin()->first);
  }
  return r;
}

void XPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) t_.erase(it);
}

Rational XPoly::coeff(const Monomial& m) const {
  Monomial t = m;
  trim(t);
  auto it = t_.find(t);
  return it == t_.end() ? Rational(0) : it->second;
}

int XPoly::deg_in(int k) const {
  int d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, exp_at(m, k));
  return d;
}

int XPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, monomial_degree(m));
  return d;
}

int XPoly::top_variable() const {
  int top = -1;
  for (const auto& [m, c] : t_) top = std::max(top, static_cast<int>(m.size()) - 1);
  return top;
}

std::vector<int> XPoly::variables() const {
  std::vector<int> out;
  for (int k = 0; k <= top_variable(); ++k) {
    if (deg_in(k) > 0) out.push_back(k);
  }
  return out;
}

bool XPoly::is_integral() const {
  return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.get_den() == 1; });
}

XPoly& XPoly::operator+=(const XPoly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

XPoly& XPoly::operator-=(const XPoly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  XPoly r;
  for (const auto& [ma, ca] : a.t_) {
    for (const auto& [mb, cb] : b.t_) r.add_term(mono_mul(ma, mb), ca * cb);
  }
  return r;
}

XPoly& XPoly::operator*=(const XPoly& o) { return *this = *this * o; }

XPoly& XPoly::operator*=(const Rational& s) {
  if (s == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, c] : t_) c *= s;
  return *this;
}

XPoly XPoly::operator-() const { return *this * Rational(-1); }

XPoly XPoly::pow(unsigned n) const {
  XPoly r = constant(1), b = *this;
  while (n > 0) {
    if (n & 1U) r *= b;
    n >>= 1U;
    if (n > 0) b = b * b;
  }
  return r;
}

std::vector<XPoly> XPoly::split(int k) const {
  std::vector<XPoly> parts(static_cast<std::size_t>(deg_in(k)) + 1);
  for (const auto& [m, c] : t_) {
    const int e = exp_at(m, k);
    Monomial rest = m;
    if (e > 0) rest[static_cast<std::size_t>(k)] = 0;
    trim(rest);
    parts[static_cast<std::size_t>(e)].add_term(rest, c);
  }
  while (parts.size() > 1 && parts.back().is_zero()) parts.pop_back();
  return parts;
}

XPoly XPoly::join(const std::vector<XPoly>& parts, int k) {
  XPoly r;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    r += j == 0 ? parts[j] : parts[j] * var(k, static_cast<int>(j));
  }
  return r;
}

XPoly XPoly::substitute(int k, const XPoly& by) const {
  auto parts = split(k);
  XPoly r;
  for (std::size_t j = parts.size(); j-- > 0;) r = r * by + parts[j];
  return r;
}

UniPoly XPoly::evaluate(const std::vector<UniPoly>& at) const {
  UniPoly r;
  std::vector<std::vector<UniPoly>> powers(at.size());
  for (const auto& [m, c] : t_) {
    UniPoly term = UniPoly::constant(c);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (k >= at.size()) throw Error(Reason::position_out_of_range, "no value for X" + std::to_string(k));
      auto& pw = powers[k];
      if (pw.empty()) pw.push_back(UniPoly::constant(1));
      while (pw.size() <= static_cast<std::size_t>(m[k])) pw.push_back(pw.back() * at[k]);
      term *= pw[static_cast<std::size_t>(m[k])];
    }
    r += term;
  }
  return r;
}

std::string XPoly::to_string() const {
  if (t_.empty()) return "0";
  std::vector<const std::pair<const Monomial, Rational>*> order;
  for (const auto& kv : t_) order.push_back(&kv);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return display_before(a->first, b->first); });
  std::ostringstream os;
  bool first = true;
  for (const auto* kv : order) {
    const auto& [m, c] = *kv;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (a != 1 || m.empty()) {
      os << valring::to_string(a);
      need_star = true;
    }
    for (int k = static_cast<int>(m.size()) - 1; k >= 0; --k) {
      const int e = m[static_cast<std::size_t>(k)];
      if (e == 0) continue;
      if (need_star) os << "*";
      os << "X" << k;
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

XPoly parse_xpoly(std::string_view text) {
  XPoly r;
  for (auto& [c, m] : TermReader(text, false).read()) r += XPoly::term(c, m);
  return r;
}

UniPoly parse_upoly(std::string_view text) {
  UniPoly r;
  for (auto& [c, m] : TermReader(text, true).read()) r += UniPoly::monomial(c, m.empty() ? 0 : m[0]);
  return r;
}

Value mu0(const PadicContext& ctx, const XPoly& f) {
  if (f.is_zero()) throw Error(Reason::zero_polynomial, "mu0 of the zero polynomial");
  Value best = Value::infinity();
  for (const auto& [m, c] : f.terms()) best = min(best, ctx.pval(c));
  return best;
}

}  // namespace valring
