#ifndef KREG_SEQTOOLS_HPP
#define KREG_SEQTOOLS_HPP

#include "kreg/exactnum.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kreg {

/// sum_j q_j(t) Dt^j with integer polynomial coefficients.
struct ODE {
  std::vector<UniPoly> coeffs;  // coeffs[j] multiplies Dt^j

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  int degree() const;
  friend bool operator==(const ODE&, const ODE&) = default;
};

/// Multiplies by the common denominator, removes the polynomial content and
/// makes the coefficient of the highest t power in the top Dt coefficient
/// positive. Throws when every entry is zero.
ODE normalize_ode(const std::vector<RatFunc>& q);
/// True when a and b agree up to a non-zero Q(t) factor.
bool ode_equivalent(const ODE& a, const ODE& b);
/// Applies the ODE to a truncated series c_0..c_N and returns the coefficients
/// of t^0..t^M of the result that are fully determined, M = N - order.
std::vector<Rat> apply_ode(const ODE& ode, const std::vector<Rat>& series);

enum class RecMode { Taylor, Counts };

/// sum_s a_s(N) x_{N+s} = 0 for every integer N, with x_n = 0 for n < 0 and
/// a_s integer polynomials in N.
struct Recurrence {
  RecMode mode = RecMode::Taylor;
  std::vector<UniPoly> coeffs;  // coeffs[s] in the variable N

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  friend bool operator==(const Recurrence&, const Recurrence&) = default;
};

Recurrence ode_to_rec(const ODE& ode);
Recurrence rec_counts(const Recurrence& rec);

class UnrollError : public std::runtime_error {
public:
  UnrollError(const std::string& what, long index) : std::runtime_error(what), index_(index) {}
  long index() const { return index_; }

private:
  long index_;
};

/// Terms x_0..x_N with x_0 = 1 and x_n = 0 for n < 0. Blocked indices, where
/// the leading coefficient vanishes, are solved from later instances.
std::vector<Rat> unroll_rational(const Recurrence& rec, long N);
/// Same for counts mode, with integer-only arithmetic; throws UnrollError on a
/// non-integer value.
std::vector<BigInt> unroll_counts(const Recurrence& rec, long N);

/// Non-negative integer roots of the indicial polynomial at t = 0.
std::vector<long> indicial_roots(const ODE& ode);
/// True when 0 is the only non-negative integer exponent at t = 0.
bool indicial_check(const ODE& ode);

std::string to_text(const ODE& ode);
std::string to_text(const Recurrence& rec);
std::string to_json(const ODE& ode);
std::string to_json(const Recurrence& rec);

}  // namespace kreg

#endif  // KREG_SEQTOOLS_HPP
