#ifndef KREG_ORACLE_HPP
#define KREG_ORACLE_HPP

#include "kreg/models.hpp"

#include <map>
#include <vector>

namespace kreg {

/// prod_i i^{r_i} r_i!, the value of <p^r, p^r>.
BigInt monomial_norm(const Exponent& r);

/// sum over common monomials of coeff * coeff * <p^r, p^r>.
Rat trunc_pairing(const QPoly& U, const QPoly& V);

/// Evaluates <exp(f), .> for a model, with f a sum of per-variable quadratics.
class PairingOracle {
public:
  explicit PairingOracle(const ModelSpec& model);

  const ModelSpec& model() const { return model_; }
  /// Coefficient of p^r in exp(f).
  Rat exp_f_coeff(const Exponent& r);
  /// <exp(f), V>.
  Rat pair(const QPoly& V);
  /// g^n, cached.
  const QPoly& g_power(int n);
  /// c_0..c_N of <exp(f), exp(t g)>.
  std::vector<Rat> series(int N);
  /// D(t) * <exp(f), h exp(t g)> mod t^(N+1), where D is the least common
  /// denominator of the coefficients of h. Returns the series and D.
  std::vector<Rat> cleared_series(const MPoly& h, int N, UniPoly* denominator = nullptr);

private:
  ModelSpec model_;
  int k_;
  std::vector<Rat> A_, B_;  // f = sum A_i p_i^2 + B_i p_i
  std::vector<std::map<int, Rat>> cache_;
  std::vector<QPoly> gpow_;
};

std::vector<Rat> scalar_series(const ModelSpec& model, int N);

/// Number of labelled structures on n vertices with all degrees in K.
BigInt graph_count_dp(const ModelSpec& model, int n);
std::vector<BigInt> graph_counts(const ModelSpec& model, int nmax);

/// Truncated product of a polynomial in t with a series.
std::vector<Rat> mul_series(const UniPoly& p, const std::vector<Rat>& s);

}  // namespace kreg

#endif  // KREG_ORACLE_HPP
