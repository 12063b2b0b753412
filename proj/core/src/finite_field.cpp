#include "valring/finite_field.hpp"

#include <algorithm>
#include <limits>

#include "valring/errors.hpp"
#include "valring/rational.hpp"

namespace valring {

namespace fp {

long add(long a, long b, long p) {
  long r = a + b;
  return r >= p ? r - p : r;
}

long sub(long a, long b, long p) {
  long r = a - b;
  return r < 0 ? r + p : r;
}

long mul(long a, long b, long p) {
  return static_cast<long>((static_cast<__int128>(a) * b) % p);
}

long inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw Error(Reason::internal_error, "inverse of zero in F_p");
  return t < 0 ? t + p : t;
}

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly mul(const FpPoly& a, const FpPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, long p) {
  FpPoly r = a;
  if (b.size() > r.size()) r.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = fp::sub(r[i], b[i], p);
  trim(r);
  return r;
}

FpPoly mod(FpPoly a, const FpPoly& m, long p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  long lead_inv = inv(m.back(), p);
  while (a.size() > dm) {
    long c = mul(a.back(), lead_inv, p);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = fp::sub(a[shift + j], mul(c, m[j], p), p);
    trim(a);
  }
  return a;
}

FpPoly gcd(FpPoly a, FpPoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long li = inv(a.back(), p);
    for (auto& c : a) c = mul(c, li, p);
  }
  return a;
}

namespace {
FpPoly powmod(FpPoly base, Integer e, const FpPoly& m, long p) {
  FpPoly result{1};
  base = mod(base, m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mod(mul(result, base, p), m, p);
    e >>= 1;
    if (e > 0) base = mod(mul(base, base, p), m, p);
  }
  return result;
}
}  // namespace

FpPoly frobenius_power_of_x(const FpPoly& m, long p, unsigned e) {
  FpPoly r = mod(FpPoly{0, 1}, m, p);
  for (unsigned i = 0; i < e; ++i) r = powmod(r, Integer(p), m, p);
  return r;
}

bool is_irreducible(const FpPoly& f, long p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (k == 0) return false;
  if (k == 1) return true;
  FpPoly x{0, 1};
  if (sub(frobenius_power_of_x(f, p, k), mod(x, f, p), p) != FpPoly{}) return false;
  for (unsigned r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime(r)) continue;
    FpPoly h = sub(frobenius_power_of_x(f, p, k / r), x, p);
    if (gcd(f, h, p).size() != 1) return false;
  }
  return true;
}

FpPoly smallest_irreducible(long p, unsigned k) {
  FpPoly f(k + 1, 0);
  f[k] = 1;
  if (k == 1) return f;
  while (true) {
    FpPoly t = f;
    trim(t);
    if (f[0] != 0 && is_irreducible(t, p)) return t;
    std::size_t j = 0;
    while (j < k) {
      if (++f[j] < p) break;
      f[j] = 0;
      ++j;
    }
    if (j == k) throw Error(Reason::internal_error, "no irreducible polynomial found");
  }
}

}  // namespace fp

GaloisField::GaloisField(long p, unsigned k) : p_(p), k_(k), m_(fp::smallest_irreducible(p, k)) {
  if (k == 0) throw Error(Reason::internal_error, "field extension degree 0");
}

std::uint64_t GaloisField::order() const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k_; ++i) {
    if (q > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(p_)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    q *= static_cast<std::uint64_t>(p_);
  }
  return q;
}

FqElem GaloisField::from_int(long a) const {
  long r = a % p_;
  if (r < 0) r += p_;
  if (r == 0) return {};
  return {r};
}

FqElem GaloisField::generator() const { return fp::mod(FpPoly{0, 1}, m_, p_); }

FqElem GaloisField::add(const FqElem& a, const FqElem& b) const {
  FqElem r = a;
  if (b.size() > r.size()) r.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = fp::add(r[i], b[i], p_);
  fp::trim(r);
  return r;
}

FqElem GaloisField::sub(const FqElem& a, const FqElem& b) const { return fp::sub(a, b, p_); }

FqElem GaloisField::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem GaloisField::mul(const FqElem& a, const FqElem& b) const {
  return fp::mod(fp::mul(a, b, p_), m_, p_);
}

FqElem GaloisField::pow(FqElem a, std::uint64_t e) const {
  FqElem r = one();
  while (e) {
    if (e & 1U) r = mul(r, a);
    e >>= 1U;
    if (e) a = mul(a, a);
  }
  return r;
}

FqElem GaloisField::frobenius(const FqElem& a, unsigned e) const {
  FqElem r = a;
  for (unsigned i = 0; i < e; ++i) r = pow(r, static_cast<std::uint64_t>(p_));
  return r;
}

FqElem GaloisField::inv(const FqElem& a) const {
  if (a.empty()) throw Error(Reason::internal_error, "inverse of zero in F_q");
  // extended Euclid on (m, a)
  FpPoly r0 = m_, r1 = a;
  FpPoly s0{}, s1{1};
  while (!r1.empty()) {
    // r0 = q r1 + rem
    FpPoly rem = r0;
    FpPoly quot;
    long li = fp::inv(r1.back(), p_);
    while (rem.size() >= r1.size() && !rem.empty()) {
      long c = fp::mul(rem.back(), li, p_);
      std::size_t shift = rem.size() - r1.size();
      if (quot.size() < shift + 1) quot.resize(shift + 1, 0);
      quot[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) {
        rem[shift + j] = fp::sub(rem[shift + j], fp::mul(c, r1[j], p_), p_);
      }
      fp::trim(rem);
    }
    FpPoly s2 = fp::sub(s0, fp::mul(quot, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant
  long ci = fp::inv(r0[0], p_);
  FqElem out;
  for (long c : s0) out.push_back(fp::mul(c, ci, p_));
  fp::trim(out);
  return fp::mod(out, m_, p_);
}

FqElem GaloisField::pth_root(const FqElem& a) const {
  if (k_ == 1) return a;
  return frobenius(a, k_ - 1);
}

bool GaloisField::less(const FqElem& a, const FqElem& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::vector<long> GaloisField::coords(const FqElem& a) const {
  std::vector<long> c = a;
  c.resize(k_, 0);
  return c;
}

FqElem GaloisField::from_coords(std::vector<long> c) const {
  for (auto& x : c) {
    x %= p_;
    if (x < 0) x += p_;
  }
  fp::trim(c);
  return fp::mod(c, m_, p_);
}

FqElem GaloisField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<long> dist(0, p_ - 1);
  std::vector<long> c(k_);
  for (auto& x : c) x = dist(rng);
  return from_coords(std::move(c));
}

std::string GaloisField::to_string(const FqElem& a) const {
  if (a.empty()) return "0";
  if (k_ == 1) return std::to_string(a[0]);
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(a[i]);
      continue;
    }
    if (a[i] != 1) out += std::to_string(a[i]) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

namespace fq {

void trim(FqPoly& f) {
  while (!f.empty() && f.back().empty()) f.pop_back();
}

int degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

FqPoly add(const GaloisField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

FqPoly sub(const GaloisField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

FqPoly mul(const GaloisField& F, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

std::pair<FqPoly, FqPoly> divmod(const GaloisField& F, const FqPoly& a, const FqPoly& b) {
  if (b.empty()) throw Error(Reason::internal_error, "division by zero polynomial over F_q");
  FqPoly rem = a;
  trim(rem);
  if (rem.size() < b.size()) return {{}, rem};
  FqPoly quot(rem.size() - b.size() + 1);
  FqElem li = F.inv(b.back());
  while (rem.size() >= b.size()) {
    FqElem c = F.mul(rem.back(), li);
    std::size_t shift = rem.size() - b.size();
    quot[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] = F.sub(rem[shift + j], F.mul(c, b[j]));
    trim(rem);
  }
  trim(quot);
  return {quot, rem};
}

FqPoly monic(const GaloisField& F, const FqPoly& a) {
  if (a.empty()) return a;
  FqElem li = F.inv(a.back());
  FqPoly r;
  for (const auto& c : a) r.push_back(F.mul(c, li));
  return r;
}

FqPoly gcd(const GaloisField& F, FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

FqPoly derivative(const GaloisField& F, const FqPoly& a) {
  FqPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) {
    d.push_back(F.mul(a[i], F.from_int(static_cast<long>(i % static_cast<std::size_t>(F.characteristic())))));
  }
  trim(d);
  return d;
}

FqPoly powmod(const GaloisField& F, FqPoly base, std::uint64_t e, const FqPoly& m) {
  FqPoly result{F.one()};
  result = divmod(F, result, m).second;
  base = divmod(F, base, m).second;
  while (e) {
    if (e & 1U) result = divmod(F, mul(F, result, base), m).second;
    e >>= 1U;
    if (e) base = divmod(F, mul(F, base, base), m).second;
  }
  return result;
}

FqElem evaluate(const GaloisField& F, const FqPoly& f, const FqElem& at) {
  FqElem acc;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, at), *it);
  return acc;
}

namespace {

bool poly_less(const FqPoly& a, const FqPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return GaloisField::less(a[i], b[i]);
  }
  return false;
}

// h^(q^d) mod m, with q = |F|, computed as repeated p-th powers.
FqPoly frobenius_mod(const GaloisField& F, FqPoly h, unsigned times, const FqPoly& m) {
  for (unsigned i = 0; i < times; ++i) h = powmod(F, h, static_cast<std::uint64_t>(F.characteristic()), m);
  return h;
}

std::vector<std::pair<FqPoly, unsigned>> squarefree(const GaloisField& F, const FqPoly& f) {
  std::vector<std::pair<FqPoly, unsigned>> out;
  FqPoly c = gcd(F, f, derivative(F, f));
  FqPoly w = divmod(F, f, c).first;
  unsigned i = 1;
  while (degree(w) > 0) {
    FqPoly y = gcd(F, w, c);
    FqPoly fac = divmod(F, w, y).first;
    if (degree(fac) > 0) out.emplace_back(monic(F, fac), i);
    w = y;
    c = divmod(F, c, y).first;
    ++i;
  }
  if (degree(c) > 0) {
    const auto p = static_cast<std::size_t>(F.characteristic());
    FqPoly root;
    for (std::size_t j = 0; j < c.size(); j += p) root.push_back(F.pth_root(c[j]));
    trim(root);
    for (auto& [g, j] : squarefree(F, root)) out.emplace_back(g, j * static_cast<unsigned>(p));
  }
  return out;
}

// Equal-degree splitting of a squarefree product of irreducibles of degree d.
void split(const GaloisField& F, const FqPoly& f, unsigned d, std::mt19937_64& rng,
           std::vector<FqPoly>& out) {
  if (static_cast<unsigned>(degree(f)) == d) {
    out.push_back(monic(F, f));
    return;
  }
  const unsigned fdeg = static_cast<unsigned>(degree(f));
  const bool even = F.characteristic() == 2;
  while (true) {
    FqPoly a;
    for (unsigned i = 0; i < fdeg; ++i) a.push_back(F.random(rng));
    trim(a);
    if (degree(a) < 1) continue;
    FqPoly b;
    if (even) {
      // trace map sum_{j < k d} a^(2^j)
      const unsigned steps = F.degree() * d;
      FqPoly term = divmod(F, a, f).second;
      b = term;
      for (unsigned j = 1; j < steps; ++j) {
        term = powmod(F, term, 2, f);
        b = add(F, b, term);
      }
    } else {
      // a^((q^d - 1)/2) - 1, exponent handled as a big integer through GMP
      Integer q = 1;
      for (unsigned j = 0; j < F.degree() * d; ++j) q *= F.characteristic();
      Integer e = (q - 1) / 2;
      FqPoly r{F.one()};
      FqPoly base = divmod(F, a, f).second;
      while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = divmod(F, mul(F, r, base), f).second;
        e >>= 1;
        if (e > 0) base = divmod(F, mul(F, base, base), f).second;
      }
      b = sub(F, r, FqPoly{F.one()});
    }
    FqPoly g = gcd(F, f, b);
    if (degree(g) > 0 && degree(g) < degree(f)) {
      split(F, g, d, rng, out);
      split(F, divmod(F, f, g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> factor(const GaloisField& F, const FqPoly& f_in) {
  FqPoly f = f_in;
  trim(f);
  if (degree(f) < 1) return {};
  std::mt19937_64 rng(0x5eedULL);
  std::vector<Factor> out;
  for (auto& [sf, mult] : squarefree(F, monic(F, f))) {
    FqPoly rest = sf;
    FqPoly x{F.zero(), F.one()};
    FqPoly h = x;
    for (unsigned d = 1; 2 * d <= static_cast<unsigned>(degree(rest)); ++d) {
      h = frobenius_mod(F, h, F.degree(), rest);
      FqPoly g = gcd(F, rest, sub(F, h, x));
      if (degree(g) > 0) {
        std::vector<FqPoly> parts;
        split(F, g, d, rng, parts);
        for (auto& part : parts) out.push_back({part, mult});
        rest = divmod(F, rest, g).first;
        h = divmod(F, h, rest).second;
      }
    }
    if (degree(rest) > 0) out.push_back({monic(F, rest), mult});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    return poly_less(a.poly, b.poly);
  });
  return out;
}

bool is_irreducible(const GaloisField& F, const FqPoly& f) {
  auto fs = factor(F, f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

std::vector<FqElem> roots(const GaloisField& F, const FqPoly& f) {
  std::vector<FqElem> out;
  for (const auto& fac : factor(F, f)) {
    if (degree(fac.poly) == 1) out.push_back(F.neg(fac.poly[0]));
  }
  std::sort(out.begin(), out.end(), GaloisField::less);
  return out;
}

std::string to_string(const GaloisField& F, const FqPoly& f, char var) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i].empty()) continue;
    if (!out.empty()) out += " + ";
    std::string c = F.to_string(f[i]);
    bool compound = c.find('+') != std::string::npos;
    if (i == 0) {
      out += compound ? "(" + c + ")" : c;
      continue;
    }
    if (c != "1") out += (compound ? "(" + c + ")" : c) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace fq

Embedding::Embedding(const GaloisField& from, const GaloisField& to) : to_(to) {
  if (to.degree() % from.degree() != 0 || to.characteristic() != from.characteristic()) {
    throw Error(Reason::internal_error, "no embedding between these fields");
  }
  FqPoly m;
  for (long c : from.modulus()) m.push_back(to.from_int(c));
  auto rs = fq::roots(to, m);
  if (rs.empty()) throw Error(Reason::internal_error, "defining polynomial has no root");
  image_ = rs.front();
}

FqElem Embedding::operator()(const FqElem& a) const {
  FqElem acc;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = to_->add(to_->mul(acc, image_), to_->from_int(a[i]));
  }
  return acc;
}

FqPoly Embedding::map(const FqPoly& f) const {
  FqPoly out;
  for (const auto& c : f) out.push_back((*this)(c));
  return out;
}

bool solve_mod_p(std::vector<std::vector<long>> a, std::vector<long> b, long p,
                 std::vector<long>& x) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] % p == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    long li = fp::inv(a[col][col], p);
    for (std::size_t j = 0; j < n; ++j) a[col][j] = fp::mul(a[col][j], li, p);
    b[col] = fp::mul(b[col], li, p);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      long f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) a[r][j] = fp::sub(a[r][j], fp::mul(f, a[col][j], p), p);
      b[r] = fp::sub(b[r], fp::mul(f, b[col], p), p);
    }
  }
  x = b;
  return true;
}

}  // namespace valring
