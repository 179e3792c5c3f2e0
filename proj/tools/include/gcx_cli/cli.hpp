#pragma once

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gcx/models.hpp"

namespace gcx::cli {

enum class Command { kCheck, kNormalForm, kBracket };

struct RunConfig {
  Command command = Command::kCheck;
  std::vector<std::string> checks;  // local-model, surgery, quotient, locus, algebra, all
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  std::optional<double> tol;  // overrides every per-check default
  models::SurgeryGeometry geometry;
  std::vector<models::LogModelParams> quotient_params;
  std::optional<std::string> input;
  std::optional<std::string> output;
  int jobs = 1;

  // Throws ContractError with an actionable message.
  void validate() const;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

struct RunResult {
  int exit_code = kExitPass;
  nlohmann::json document;             // array of reports, or the command result
  std::vector<std::string> summary;    // one line per check
};

const std::vector<std::string>& check_groups();

// Default (m, k) pairs for the quotient group.
std::vector<models::LogModelParams> default_quotient_params();

RunResult run(const RunConfig& config);

// Parses argv, runs and writes. JSON goes to --output when given (summary to
// `out`), otherwise to `out` with the summary on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gcx::cli
