#ifndef KREG_EXACTNUM_HPP
#define KREG_EXACTNUM_HPP

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace kreg {

/// Arbitrary precision integer. GMP keeps magnitudes limb-normalized and has a
/// single zero state.
using BigInt = mpz_class;

/// Canonical rational: gcd(num, den) = 1, den > 0, zero is 0/1.
using Rat = mpq_class;

class MathError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Rat make_rat(const BigInt& num, const BigInt& den);
std::string to_string(const BigInt& x);
std::string to_string(const Rat& x);

/// Dense univariate polynomial in t with integer coefficients, ascending.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
public:
  UniPoly() = default;
  UniPoly(std::initializer_list<long> coeffs);
  explicit UniPoly(std::vector<BigInt> coeffs);
  static UniPoly constant(const BigInt& c);
  static UniPoly monomial(const BigInt& c, std::size_t degree);
  static UniPoly t() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::size_t size() const { return c_.size(); }
  const BigInt& operator[](std::size_t i) const { return c_[i]; }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  const BigInt& lead() const { return c_.back(); }
  const std::vector<BigInt>& coeffs() const { return c_; }

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const BigInt& s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const BigInt& s) { return a *= s; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Exact division by an integer that divides every coefficient.
  UniPoly divexact(const BigInt& s) const;
  UniPoly derivative() const;
  BigInt eval(const BigInt& x) const;
  Rat eval(const Rat& x) const;
  /// Non-negative gcd of the coefficients (0 for the zero polynomial).
  BigInt content() const;
  /// Max bit length of the coefficients.
  std::size_t max_bits() const;

  std::string to_string(const char* var = "t") const;

private:
  void trim();
  std::vector<BigInt> c_;
};

/// Exact quotient a/b over Z[t]; throws MathError when b does not divide a.
UniPoly divexact(const UniPoly& a, const UniPoly& b);
/// Returns true and sets q when b divides a over Z[t].
bool divides(const UniPoly& b, const UniPoly& a, UniPoly* q = nullptr);
/// a divided by its content, with positive leading coefficient.
UniPoly primitive_part(const UniPoly& a);
/// Primitive gcd with positive leading coefficient. Throws if both are zero.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b.
UniPoly pseudo_rem(const UniPoly& a, const UniPoly& b);

/// Element of Q(t) in canonical form scale * num / den with num, den
/// primitive in Z[t], both with positive leading coefficient and coprime.
/// Zero is scale 0, num = den = 1. Equality is structural.
class RatFunc {
public:
  RatFunc() : scale_(0), num_{1}, den_{1} {}
  RatFunc(long c) : RatFunc(Rat(c)) {}
  RatFunc(const Rat& c);
  RatFunc(const BigInt& c) : RatFunc(Rat(c)) {}
  explicit RatFunc(const UniPoly& p);
  /// Normalizes num/den. Throws MathError when den is zero.
  RatFunc(const UniPoly& num, const UniPoly& den);
  static RatFunc t() { return RatFunc(UniPoly::t()); }

  bool is_zero() const { return scale_ == 0; }
  bool is_one() const { return scale_ == 1 && num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_one() && den_.is_one(); }
  const Rat& scale() const { return scale_; }
  const UniPoly& num_part() const { return num_; }
  const UniPoly& den_part() const { return den_; }
  /// Integer numerator and denominator with value = N / D, D primitive-free
  /// of the rational scale's denominator folded in.
  UniPoly numerator() const;
  UniPoly denominator() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  RatFunc& operator*=(const Rat& s);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.scale_ == b.scale_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc inverse() const;
  RatFunc derivative() const;
  /// Value at a rational point; throws MathError at a pole.
  Rat eval(const Rat& x) const;

  std::string to_string() const;

private:
  struct Raw {};
  RatFunc(Raw, Rat scale, UniPoly num, UniPoly den)
      : scale_(std::move(scale)), num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize_zero();

  Rat scale_;
  UniPoly num_;
  UniPoly den_;
};

std::ostream& operator<<(std::ostream& os, const UniPoly& p);
std::ostream& operator<<(std::ostream& os, const RatFunc& r);

/// Parses an integer polynomial in t such as "3*t^2 - t + 1".
UniPoly parse_unipoly(const std::string& text);

}  // namespace kreg

#endif  // KREG_EXACTNUM_HPP
