#ifndef KREG_CLI_HPP
#define KREG_CLI_HPP

#include "kreg/models.hpp"

#include <string>
#include <vector>

namespace kreg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 2;
inline constexpr int kExitMismatch = 3;
inline constexpr int kExitUsage = 64;

enum class EmitKind { Ode, Rec, RecEgf, Terms, Gb, Ghat };
enum class Format { Text, Json };

struct RunConfig {
  ModelSpec model;
  EmitKind emit = EmitKind::Ode;
  long terms = 10;
  Format format = Format::Text;
  bool check = false;
  int max_oracle_n = 10;
  bool trace = false;
  bool dump_gb = false;
  bool dump_ghat = false;
  bool dump_generators = false;
};

/// Exit status, the artifact bytes and the diagnostics meant for stderr.
struct RunOutput {
  int status = kExitOk;
  std::string out;
  std::string err;
};

/// Throws std::invalid_argument on an unknown name.
EmitKind parse_emit(const std::string& name);
Format parse_format(const std::string& name);

RunOutput run(const RunConfig& cfg);

/// Runs one configuration per model on up to jobs threads. Outputs keep the
/// input order; each artifact is preceded by a "# model" line.
RunOutput run_batch(const std::vector<ModelSpec>& models, const RunConfig& base, int jobs);

std::string terms_text(const std::vector<BigInt>& values);
std::string terms_json(const std::vector<BigInt>& values);

}  // namespace kreg

#endif  // KREG_CLI_HPP
