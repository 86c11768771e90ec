#ifndef KREG_POLYRING_HPP
#define KREG_POLYRING_HPP

#include "kreg/exactnum.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kreg {

inline constexpr int kMaxVars = 8;

/// Exponent vector (a_1, ..., a_k) of a monomial in p_1..p_k.
class Exponent {
public:
  Exponent() = default;
  explicit Exponent(int nvars);
  Exponent(std::initializer_list<int> e);
  static Exponent unit(int nvars, int index);

  int nvars() const { return n_; }
  int operator[](int i) const { return e_[i]; }
  void set(int i, int v) { e_[i] = static_cast<std::uint16_t>(v); }
  int total_degree() const;
  /// Sum of i * a_i, with p_i carrying weight i.
  int weighted_degree() const;
  bool is_zero() const { return total_degree() == 0; }

  friend Exponent operator+(const Exponent& a, const Exponent& b);
  /// a - b; requires b to divide a.
  friend Exponent operator-(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

  /// Componentwise a <= b, i.e. p^a divides p^b.
  bool divides(const Exponent& b) const;
  friend Exponent lcm(const Exponent& a, const Exponent& b);
  friend Exponent gcd(const Exponent& a, const Exponent& b);

  /// Renders p1^2*p3, or "1" for the zero exponent. prefix is "p" or "d".
  std::string to_string(const char* prefix = "p") const;

private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

enum class Ordering { LT, EQ, GT };

enum class MonomialOrder {
  GradedP,     // total degree, ties by reverse lexicographic comparison
  ElimPOverD,  // p-part by GradedP, then the d-part by GradedP
  ModuleOrder  // eta1 terms above eta0 terms; eta0 terms by p-part, then position
};

/// Graded reverse lexicographic comparison on p-monomials. Ties in total
/// degree are broken at the lowest-index variable first: fewer p_1 wins, so
/// p_k > ... > p_2 > p_1 in degree one.
Ordering cmp_graded(const Exponent& a, const Exponent& b);

/// Monomial p^alpha d^beta of the Weyl algebra.
struct WeylMonomial {
  Exponent p;
  Exponent d;
  friend bool operator==(const WeylMonomial& a, const WeylMonomial& b) {
    return a.p == b.p && a.d == b.d;
  }
};

/// Term of the free module: position eta1 (nullopt) or d^pos eta0, times p^mono.
struct ModuleMonomial {
  std::optional<Exponent> position;
  Exponent mono;
  friend bool operator==(const ModuleMonomial& a, const ModuleMonomial& b) {
    return a.position == b.position && a.mono == b.mono;
  }
};

Ordering order_cmp(const Exponent& a, const Exponent& b);
Ordering order_cmp(const WeylMonomial& a, const WeylMonomial& b);
Ordering order_cmp(const ModuleMonomial& a, const ModuleMonomial& b);

/// Strict "greater first" comparators for ordered containers.
struct GradedDesc {
  bool operator()(const Exponent& a, const Exponent& b) const {
    return cmp_graded(a, b) == Ordering::GT;
  }
};
struct WeylDesc {
  bool operator()(const WeylMonomial& a, const WeylMonomial& b) const {
    return order_cmp(a, b) == Ordering::GT;
  }
};

/// Sparse polynomial in p_1..p_k, terms kept in descending GradedP order.
template <class Coeff>
class BasicMPoly {
public:
  using TermMap = std::map<Exponent, Coeff, GradedDesc>;

  BasicMPoly() = default;
  explicit BasicMPoly(int nvars) : n_(nvars) {}
  static BasicMPoly constant(int nvars, const Coeff& c) {
    BasicMPoly r(nvars);
    r.add_term(Exponent(nvars), c);
    return r;
  }
  static BasicMPoly monomial(const Exponent& e, const Coeff& c) {
    BasicMPoly r(e.nvars());
    r.add_term(e, c);
    return r;
  }
  static BasicMPoly variable(int nvars, int index) {
    return monomial(Exponent::unit(nvars, index), Coeff(1));
  }

  int nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  typename TermMap::const_iterator begin() const { return terms_.begin(); }
  typename TermMap::const_iterator end() const { return terms_.end(); }

  Coeff coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff() : it->second;
  }

  /// Leading monomial and coefficient under GradedP. Throws on zero.
  std::pair<Exponent, Coeff> leading_term() const {
    if (terms_.empty()) throw MathError("leading term of the zero polynomial");
    return *terms_.begin();
  }
  const Exponent& leading_monomial() const {
    if (terms_.empty()) throw MathError("leading monomial of the zero polynomial");
    return terms_.begin()->first;
  }
  const Coeff& leading_coeff() const {
    if (terms_.empty()) throw MathError("leading coefficient of the zero polynomial");
    return terms_.begin()->second;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
    return d;
  }

  /// Adds c * p^e in place.
  void add_term(const Exponent& e, const Coeff& c) {
    if (c == Coeff()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff()) terms_.erase(it);
    }
  }
  void sub_term(const Exponent& e, const Coeff& c) { add_term(e, -c); }
  void erase(const Exponent& e) { terms_.erase(e); }

  BasicMPoly operator-() const {
    BasicMPoly r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
    return r;
  }
  BasicMPoly& operator+=(const BasicMPoly& o) {
    adopt_nvars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicMPoly& operator-=(const BasicMPoly& o) {
    adopt_nvars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend BasicMPoly operator+(BasicMPoly a, const BasicMPoly& b) { return a += b; }
  friend BasicMPoly operator-(BasicMPoly a, const BasicMPoly& b) { return a -= b; }
  friend BasicMPoly operator*(const BasicMPoly& a, const BasicMPoly& b) {
    BasicMPoly r(std::max(a.n_, b.n_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  BasicMPoly& operator*=(const BasicMPoly& o) { return *this = *this * o; }
  BasicMPoly scale(const Coeff& s) const {
    BasicMPoly r(n_);
    if (s == Coeff()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
    return r;
  }
  /// Multiplication by c * p^e.
  BasicMPoly mul_term(const Exponent& e, const Coeff& c) const {
    BasicMPoly r(n_);
    if (c == Coeff()) return r;
    for (const auto& [ex, cx] : terms_) r.terms_.emplace_hint(r.terms_.end(), ex + e, cx * c);
    return r;
  }
  /// Partial derivative with respect to p_{index+1}.
  BasicMPoly diff(int index) const {
    BasicMPoly r(n_);
    for (const auto& [e, c] : terms_) {
      int a = e[index];
      if (a == 0) continue;
      Exponent f = e;
      f.set(index, a - 1);
      r.add_term(f, c * Coeff(a));
    }
    return r;
  }
  /// Applies d^beta (iterated partial derivatives).
  BasicMPoly diff(const Exponent& beta) const {
    BasicMPoly r(n_);
    for (const auto& [e, c] : terms_) {
      if (!beta.divides(e)) continue;
      BigInt factor = 1;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < beta[i]; ++j) factor *= e[i] - j;
      r.add_term(e - beta, c * Coeff(factor));
    }
    return r;
  }
  /// Applies f to every coefficient, dropping zeros.
  template <class F>
  BasicMPoly map_coeffs(F&& f) const {
    BasicMPoly r(n_);
    for (const auto& [e, c] : terms_) {
      Coeff v = f(c);
      if (!(v == Coeff())) r.terms_.emplace_hint(r.terms_.end(), e, std::move(v));
    }
    return r;
  }

  friend bool operator==(const BasicMPoly& a, const BasicMPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const BasicMPoly& a, const BasicMPoly& b) { return !(a == b); }

private:
  void adopt_nvars(const BasicMPoly& o) {
    if (n_ == 0) n_ = o.n_;
  }
  TermMap terms_;
  int n_ = 0;
};

using MPoly = BasicMPoly<RatFunc>;
using QPoly = BasicMPoly<Rat>;

MPoly to_mpoly(const QPoly& q);
/// Requires every coefficient to be a rational constant.
QPoly to_qpoly(const MPoly& m);
/// Specializes t at a rational point.
QPoly specialize(const MPoly& m, const Rat& t);
/// Pointwise d/dt of every coefficient.
MPoly diff_t(const MPoly& m);

/// Magnitude of a coefficient in the operator text syntax; sets *negative to
/// its sign. Non-constant values are parenthesized so they re-parse as factors.
std::string coeff_text(const RatFunc& c, bool* negative);

/// Renders a polynomial in the operator text syntax ("1/2*p1^2 - t*p2").
std::string to_string(const MPoly& m);
std::string to_string(const QPoly& m);

struct StairsResult {
  bool zero_dimensional = false;
  /// Monomials divisible by no leading monomial, ascending by GradedP.
  std::vector<Exponent> stairs;
};

/// Under-the-stairs enumeration for the monomial ideal generated by leads.
StairsResult stairs_and_dim(const std::vector<Exponent>& lead_monomials);

}  // namespace kreg

#endif  // KREG_POLYRING_HPP
