#ifndef KREG_MODELS_HPP
#define KREG_MODELS_HPP

#include "kreg/weyl.hpp"

#include <string>
#include <vector>

namespace kreg {

enum class EdgeRule { Single, Multiple };      // se, me
enum class LoopRule { None, Double, Half };    // ll, la, lh

/// A graph model (e, l, K); k = max K.
struct ModelSpec {
  EdgeRule e = EdgeRule::Single;
  LoopRule l = LoopRule::None;
  std::vector<int> K;  // sorted, distinct, positive

  int k() const { return K.empty() ? 0 : K.back(); }
  std::string to_string() const;
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Parses "se,ll,{5}" or "me,lh,{1,2,3}". Throws std::invalid_argument.
ModelSpec parse_model(const std::string& text);
ModelSpec make_model(EdgeRule e, LoopRule l, std::vector<int> K);

using Partition = std::vector<int>;

/// All partitions of n in reverse lexicographic order: (3), (2,1), (1,1,1).
std::vector<Partition> partitions(int n);
/// z_lambda = prod_i i^{r_i} r_i!.
BigInt zlambda(const Partition& lambda);
/// h_n = sum over lambda |- n of p_lambda / z_lambda, in k_ambient variables.
MPoly h_in_powersums(int n, int k_ambient);

MPoly build_f(const ModelSpec& m);
MPoly build_g(const ModelSpec& m);
/// P_i = i (d_i - df/dp_i) for i = 1..k.
std::vector<WeylOp> untwisted_generators(const ModelSpec& m);
/// The twisted P_i with respect to the model's g.
std::vector<WeylOp> build_generators(const ModelSpec& m);

}  // namespace kreg

#endif  // KREG_MODELS_HPP
