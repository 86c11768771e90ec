#ifndef KREG_MODGB_HPP
#define KREG_MODGB_HPP

#include "kreg/weyl.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace kreg {

struct ModuleDesc {
  bool operator()(const ModuleMonomial& a, const ModuleMonomial& b) const {
    return order_cmp(a, b) == Ordering::GT;
  }
};

/// Element eta1 * Q + sum_beta d^beta eta0 * R_beta of the free Q(t)[p]-module,
/// stored as one term map sorted by the module order.
class ModuleElem {
public:
  using TermMap = std::map<ModuleMonomial, RatFunc, ModuleDesc>;

  ModuleElem() = default;
  explicit ModuleElem(int nvars) : n_(nvars) {}

  int nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  const std::pair<const ModuleMonomial, RatFunc>& leading_term() const;
  bool leads_eta1() const { return !is_zero() && !terms_.begin()->first.position; }

  void add_term(const ModuleMonomial& m, const RatFunc& c);
  /// Removes and returns the leading term.
  std::pair<ModuleMonomial, RatFunc> pop_leading_term();
  MPoly eta1() const;
  std::map<Exponent, MPoly, GradedDesc> eta0() const;

  /// Module action of c * p^e on every coefficient.
  ModuleElem mul_term(const Exponent& e, const RatFunc& c) const;
  ModuleElem mul(const MPoly& s) const;
  ModuleElem scale(const RatFunc& c) const;
  /// self -= c * p^e * o, in place.
  void sub_mul(const ModuleElem& o, const Exponent& e, const RatFunc& c);
  ModuleElem& operator+=(const ModuleElem& o);
  ModuleElem& operator-=(const ModuleElem& o);
  friend ModuleElem operator+(ModuleElem a, const ModuleElem& b) { return a += b; }
  friend ModuleElem operator-(ModuleElem a, const ModuleElem& b) { return a -= b; }
  friend bool operator==(const ModuleElem& a, const ModuleElem& b) { return a.terms_ == b.terms_; }

private:
  TermMap terms_;
  int n_ = 0;
};

/// sum_beta d^beta c_beta  ->  c_0 eta1 + sum_{beta != 0} c_beta d^beta eta0.
ModuleElem eta_embed(const WeylOp& a);
/// Sets eta1 = eta0 = 1 and returns the operator in normal form.
WeylOp eta_to_weyl(const ModuleElem& m);
DLeftForm eta_to_dleft(const ModuleElem& m);

struct GBOptions {
  /// Keep, for every basis element, polynomial cofactors expressing it in
  /// terms of the input generators.
  bool track_cofactors = false;
};

struct GBStats {
  std::size_t pairs_created = 0;
  std::size_t pairs_chain_pruned = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};

struct GBResult {
  std::vector<ModuleElem> basis;
  /// cofactors[i][j] multiplies generator j; empty unless tracked.
  std::vector<std::vector<MPoly>> cofactors;
  GBStats stats;
};

/// Reduced Groebner basis of the submodule generated by gens, monic leads,
/// sorted by decreasing leading monomial.
GBResult module_buchberger(const std::vector<ModuleElem>& gens, const GBOptions& opts = {});

/// Full normal form of f modulo basis.
ModuleElem module_normal_form(const ModuleElem& f, const std::vector<ModuleElem>& basis);

/// G = Q + R with Q free of derivatives; m and c are the leading monomial and
/// coefficient of Q. dleft is G / c in derivative-left form.
struct Reducer {
  WeylOp G;
  MPoly Q;
  WeylOp R;
  Exponent m;
  RatFunc c;
  DLeftForm dleft;
};

Reducer make_reducer(const ModuleElem& e);
/// One reducer per basis element involving eta1. Throws MathError when none.
std::vector<Reducer> extract_reducers(const std::vector<ModuleElem>& gb);
/// Every monomial p^a d^b of G/c - m has |a| - |b| < deg m, or has
/// |a| - |b| = deg m with p^a below m p^b. Either way lm(G s) = m lm(s).
bool is_dominant(const Reducer& r);

std::string to_string(const ModuleElem& m);

}  // namespace kreg

#endif  // KREG_MODGB_HPP
