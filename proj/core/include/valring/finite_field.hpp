#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace valring {

/// Polynomial over F_p, little-endian residues in [0, p), trimmed.
using FpPoly = std::vector<long>;

namespace fp {
long add(long a, long b, long p);
long sub(long a, long b, long p);
long mul(long a, long b, long p);
long inv(long a, long p);
void trim(FpPoly& f);
FpPoly mul(const FpPoly& a, const FpPoly& b, long p);
FpPoly sub(const FpPoly& a, const FpPoly& b, long p);
FpPoly mod(FpPoly a, const FpPoly& m, long p);
FpPoly gcd(FpPoly a, FpPoly b, long p);
/// x^(p^e) mod m
FpPoly frobenius_power_of_x(const FpPoly& m, long p, unsigned e);
/// Rabin irreducibility test for a monic polynomial of degree >= 1.
bool is_irreducible(const FpPoly& f, long p);
/// Monic irreducible of degree k minimizing sum c_j p^j over its lower
/// coefficients.
FpPoly smallest_irreducible(long p, unsigned k);
}  // namespace fp

/// Element of F_q: coordinates in the power basis of the defining polynomial.
using FqElem = std::vector<long>;

/// F_{p^k} = F_p[t]/(m(t)) with m the smallest irreducible of degree k.
class GaloisField {
 public:
  GaloisField(long p, unsigned k);

  long characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  const FpPoly& modulus() const { return m_; }
  /// Number of elements, saturating at UINT64_MAX.
  std::uint64_t order() const;

  FqElem zero() const { return {}; }
  FqElem one() const { return {1}; }
  FqElem from_int(long a) const;
  /// The class of t.
  FqElem generator() const;

  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem pow(FqElem a, std::uint64_t e) const;
  /// a^(p^e)
  FqElem frobenius(const FqElem& a, unsigned e = 1) const;
  FqElem inv(const FqElem& a) const;
  /// Unique b with b^p = a.
  FqElem pth_root(const FqElem& a) const;
  bool is_zero(const FqElem& a) const { return a.empty(); }

  /// Canonical total order (the integer sum a_j p^j).
  static bool less(const FqElem& a, const FqElem& b);
  /// Coordinates padded to length k.
  std::vector<long> coords(const FqElem& a) const;
  FqElem from_coords(std::vector<long> c) const;
  FqElem random(std::mt19937_64& rng) const;
  std::string to_string(const FqElem& a) const;

  friend bool operator==(const GaloisField& a, const GaloisField& b) {
    return a.p_ == b.p_ && a.m_ == b.m_;
  }

 private:
  long p_;
  unsigned k_;
  FpPoly m_;
};

/// Polynomial over F_q, little-endian, trimmed.
using FqPoly = std::vector<FqElem>;

namespace fq {
void trim(FqPoly& f);
int degree(const FqPoly& f);
FqPoly add(const GaloisField& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const GaloisField& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const GaloisField& F, const FqPoly& a, const FqPoly& b);
std::pair<FqPoly, FqPoly> divmod(const GaloisField& F, const FqPoly& a, const FqPoly& b);
FqPoly gcd(const GaloisField& F, FqPoly a, FqPoly b);
FqPoly monic(const GaloisField& F, const FqPoly& a);
FqPoly derivative(const GaloisField& F, const FqPoly& a);
FqPoly powmod(const GaloisField& F, FqPoly base, std::uint64_t e, const FqPoly& m);
FqElem evaluate(const GaloisField& F, const FqPoly& f, const FqElem& at);

struct Factor {
  FqPoly poly;  // monic irreducible
  unsigned multiplicity;
};

/// Complete factorization into monic irreducibles, deterministic and
/// sorted by (degree, coefficients). The leading coefficient is dropped.
std::vector<Factor> factor(const GaloisField& F, const FqPoly& f);
bool is_irreducible(const GaloisField& F, const FqPoly& f);
/// Distinct roots in canonical element order.
std::vector<FqElem> roots(const GaloisField& F, const FqPoly& f);
std::string to_string(const GaloisField& F, const FqPoly& f, char var = 'y');
}  // namespace fq

/// Field embedding F -> E given by the image of the generator of F.
class Embedding {
 public:
  Embedding() = default;
  /// Chooses the smallest root of F's modulus in E.
  Embedding(const GaloisField& from, const GaloisField& to);
  FqElem operator()(const FqElem& a) const;
  FqPoly map(const FqPoly& f) const;
  const FqElem& generator_image() const { return image_; }

 private:
  std::optional<GaloisField> to_;
  FqElem image_;
};

/// Solves A x = b over F_p for square invertible A (row-major).
/// Returns false when A is singular.
bool solve_mod_p(std::vector<std::vector<long>> a, std::vector<long> b, long p,
                 std::vector<long>& x);

}  // namespace valring
