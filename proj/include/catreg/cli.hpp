#ifndef CATREG_CLI_HPP_
#define CATREG_CLI_HPP_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "catreg/contrast.hpp"
#include "catreg/report.hpp"

namespace catreg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

enum class Subcommand { Fit, Relevel, Encode, Predict, Selftest };
enum class OutputFormat { Text, Json };

struct CliConfig {
  Subcommand subcommand = Subcommand::Fit;
  std::string data_path;
  std::optional<std::string> schema_path;
  std::string formula;
  ContrastKind scheme = ContrastKind::Treatment;
  std::map<std::string, std::string> refs;
  std::optional<TailRequest> tail;
  OutputFormat output = OutputFormat::Text;
  int rounding = 2;
  std::map<std::string, std::string> profile;  // predict only
};

// Parses argv (argv[0] is the program name). On failure writes the reason
// to `err` and returns the exit code instead of a config; `--help` yields
// kExitOk with usage on `out`.
struct ParseOutcome {
  std::optional<CliConfig> config;
  int exit_code = kExitOk;
};
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Executes a parsed configuration; returns the process exit status.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Oracle checks bundled with the binary; one PASS/FAIL line per check.
bool run_selftest(std::ostream& out);

}  // namespace catreg::cli

#endif  // CATREG_CLI_HPP_
