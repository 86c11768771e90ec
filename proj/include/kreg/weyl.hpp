#ifndef KREG_WEYL_HPP
#define KREG_WEYL_HPP

#include "kreg/polyring.hpp"

#include <map>
#include <string>

namespace kreg {

/// Element of the Weyl algebra W_p(t) in coefficient-left normal form
/// sum c(t) p^alpha d^beta, with d_i p_j = p_j d_i + [i == j].
class WeylOp {
public:
  using TermMap = std::map<WeylMonomial, RatFunc, WeylDesc>;

  WeylOp() = default;
  explicit WeylOp(int nvars) : n_(nvars) {}
  static WeylOp constant(int nvars, const RatFunc& c);
  static WeylOp p(int nvars, int index);
  static WeylOp d(int nvars, int index);
  static WeylOp from_poly(const MPoly& s);

  int nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  typename TermMap::const_iterator begin() const { return terms_.begin(); }
  typename TermMap::const_iterator end() const { return terms_.end(); }
  RatFunc coeff(const WeylMonomial& m) const;

  void add_term(const WeylMonomial& m, const RatFunc& c);
  /// Leading term under the p-eliminating order. Throws on zero.
  std::pair<WeylMonomial, RatFunc> leading_term() const;
  /// True when no term carries a derivative.
  bool is_polynomial() const;
  /// Terms free of derivatives, as a polynomial.
  MPoly poly_part() const;

  WeylOp operator-() const;
  WeylOp& operator+=(const WeylOp& o);
  WeylOp& operator-=(const WeylOp& o);
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  friend WeylOp operator*(const WeylOp& a, const WeylOp& b);
  WeylOp scale(const RatFunc& s) const;
  friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const WeylOp& a, const WeylOp& b) { return !(a == b); }

private:
  TermMap terms_;
  int n_ = 0;
};

/// Non-commutative product in normal form.
WeylOp weyl_mul(const WeylOp& a, const WeylOp& b);

/// Anti-automorphism with p_i -> i d_i and d_i -> p_i / i.
WeylOp adjoint(const WeylOp& a);

/// adjoint(a) with every d_i replaced by d_i + t * dg/dp_i.
WeylOp twist(const WeylOp& a, const MPoly& g);

/// Action on polynomials: p_i multiplies, d_i differentiates.
MPoly apply(const WeylOp& a, const MPoly& s);

/// The same operator written sum d^beta c_beta(p), derivatives on the left.
struct DLeftForm {
  int nvars = 0;
  std::map<Exponent, MPoly, GradedDesc> parts;
  friend bool operator==(const DLeftForm& a, const DLeftForm& b) { return a.parts == b.parts; }
};

DLeftForm to_dleft(const WeylOp& a);
WeylOp from_dleft(const DLeftForm& f);
MPoly apply(const DLeftForm& f, const MPoly& s);
/// Right multiplication by a polynomial: coefficient-wise in d-left form.
DLeftForm mul_right(const DLeftForm& f, const MPoly& s);
WeylOp mul_right(const WeylOp& a, const MPoly& s);

/// Operator text syntax, e.g. "p3 - 3*d3 - t*p1". Products are read left to
/// right as Weyl products; '/' is allowed only by operators free of p and d.
WeylOp parse_weyl(const std::string& text, int nvars);
MPoly parse_mpoly(const std::string& text, int nvars);
std::string to_string(const WeylOp& a);

}  // namespace kreg

#endif  // KREG_WEYL_HPP
