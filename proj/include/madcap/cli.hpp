#ifndef MADCAP_CLI_HPP
#define MADCAP_CLI_HPP

#include <string>
#include <vector>

namespace madcap {

//============================================================================
// Command-line front end
//
// Commands: capacity, sweep, degradability, lindblad-check, verify.
// Exit codes: 0 ok, 1 verify failure, 2 CPTP violation, 3 unsupported
// family/quantity, 4 I/O failure.
//============================================================================

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failure = 1;
inline constexpr int cptp_violation = 2;
inline constexpr int unsupported = 3;
inline constexpr int io_failure = 4;
} // namespace exit_code

/// Format a number with 9 significant digits, '.' decimal separator.
std::string format_number(double v);

/// Entry point used by main(); returns the process exit code.
int run_cli(int argc, const char *const *argv);

/// Test hook: run the CLI with captured standard output/error.
struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};
CliResult run_cli_capture(const std::vector<std::string> &args);

} // namespace madcap

#endif // MADCAP_CLI_HPP
