#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "mqsym/fuzz.hpp"

namespace mqsym::cli {

enum class OutputFormat { Text, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitQueryError = 1;
inline constexpr int kExitUsageError = 2;

struct RunConfig {
  /// Script file for `run` and `fmt`.
  std::optional<std::string> script_path;
  /// Inline source for `eval`.
  std::optional<std::string> inline_source;
  std::optional<std::string> basis_path;
  /// Oracle tolerance for `verify` and `fuzz`.
  double tolerance = kOracleTolerance;
  /// Unitarity tolerance for basis validation; defaults to the file's value.
  std::optional<double> validation_tolerance;
  std::uint64_t seed = 7;
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 5;
  std::size_t cases = 1000;
  unsigned threads = 0;
  OutputFormat output = OutputFormat::Text;
  bool color = false;
};

/// Checks the RunConfig invariants; throws Error(ConfigError).
void validate(const RunConfig& config);

/// Executes a script. `basis_text` is the content of a basis file, if any.
/// Returns 0, 1 when any query failed, 2 on parse or configuration errors.
int execute(std::string_view source, std::string_view source_name, const std::optional<std::string>& basis_text,
            bool implicit_observables, const RunConfig& config, std::ostream& out, std::ostream& err);

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);
int eval_command(const RunConfig& config, std::ostream& out, std::ostream& err);
int fuzz_command(const RunConfig& config, std::ostream& out, std::ostream& err);
int fmt_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// `mqsym <run|eval|fuzz|fmt> ...`
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 12 significant digits; negative zero prints as 0.
std::string format_number(double value);

}  // namespace mqsym::cli
