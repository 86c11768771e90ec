#ifndef KREG_TELESCOPE_HPP
#define KREG_TELESCOPE_HPP

#include "kreg/modgb.hpp"
#include "kreg/models.hpp"
#include "kreg/seqtools.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kreg {

struct ReductionBasis {
  int nvars = 0;
  std::vector<Reducer> reducers;
  std::vector<Exponent> stairs;  // ascending
};

/// One reduction step: s -= G_j * (coeff * p^mono).
struct TraceStep {
  std::size_t reducer;
  Exponent mono;
  RatFunc coeff;
};

struct Reduction {
  MPoly result;
  std::vector<TraceStep> trace;
};

/// Reduces s modulo the reducers, largest divisible monomial first.
Reduction red(const MPoly& s, const ReductionBasis& basis, bool keep_trace = false);
/// Checks s = result + sum_j G_j * term_j exactly.
bool verify_trace(const MPoly& s, const Reduction& r, const ReductionBasis& basis);
/// G_j * u computed from the derivative-left form.
MPoly apply_reducer(const Reducer& r, const MPoly& u);

/// Fraction-free row echelon form over Z[t] that reports the first row
/// depending on the earlier ones.
class IncrementalKernel {
public:
  explicit IncrementalKernel(std::size_t ncols) : ncols_(ncols) {}
  /// Adds a row. Returns the coefficients (one per row so far, the last one
  /// non-zero) of a vanishing combination when the row is dependent.
  std::optional<std::vector<RatFunc>> add_row(const std::vector<RatFunc>& row);
  std::size_t rows() const { return scales_.size(); }

private:
  struct Row {
    std::vector<UniPoly> v;
    std::vector<UniPoly> cof;
    std::size_t pivot;
  };
  std::size_t ncols_;
  std::vector<Row> echelon_;
  std::vector<RatFunc> scales_;  // original row i = scales_[i]^-1 * cleared row i
};

/// First dependency among rows, or nullopt when they are independent.
std::optional<std::vector<RatFunc>> left_kernel_step(const std::vector<std::vector<RatFunc>>& rows);

enum class DeriveStatus { Ok, Fail, FailDominance };

struct DeriveOptions {
  bool keep_traces = false;
  bool verify_traces = false;
  bool track_cofactors = false;
};

struct StageTimes {
  double generators = 0, groebner = 0, reductions = 0, kernel = 0;
};

struct DeriveResult {
  DeriveStatus status = DeriveStatus::Ok;
  std::string reason;
  ModelSpec model;
  MPoly g;
  std::vector<WeylOp> generators;
  GBResult gb;
  ReductionBasis basis;
  std::vector<MPoly> ghat;
  /// traces[i] reduces g * ghat[i] + d/dt ghat[i] to ghat[i+1].
  std::vector<Reduction> traces;
  std::vector<RatFunc> relation;
  ODE ode;
  StageTimes times;
};

/// Coordinates of a reduced polynomial on the stairs.
std::vector<RatFunc> stairs_coordinates(const MPoly& s, const std::vector<Exponent>& stairs);

DeriveResult derive_ode(const ModelSpec& model, const DeriveOptions& opts = {});

}  // namespace kreg

#endif  // KREG_TELESCOPE_HPP
