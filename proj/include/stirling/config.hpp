#pragma once

// Run configuration and CSV emission for the command-line simulator.
//
// Config documents are flat UTF-8 `key = value` lines; `#` starts a comment.
// Values may carry a unit suffix ("90 deg", "1 T", "100 us"); angles default
// to radians.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stirling/errors.hpp"
#include "stirling/spin_model.hpp"

namespace stirling {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string key, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class Command { Spectrum, Cycle, Sweep, Power };

std::string_view command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 1;
};

struct RunConfig {
  Command command = Command::Cycle;
  SpinPairParams params{};
  double kT_hot = 100.0;  ///< peV
  double kT_cold = 50.0;  ///< peV
  double theta1 = 0.0;
  double theta2 = 1.5707963267948966;  // pi/2
  // Unset grid fields fall back to command defaults: [0, pi] x 181 for
  // spectrum, [0, pi/2] x 91 otherwise.
  std::optional<double> grid_start;
  std::optional<double> grid_stop;
  std::optional<std::size_t> grid_count;
  std::size_t iterations = 250;
  double tau_adiabatic_ns = 1e5;
  double tau_isochoric_ns = 1.0;
  std::optional<double> gamma0;  ///< 1/ns; calibrated when unset
  std::optional<std::string> output;

  GridSpec effective_grid() const;
  /// Throws ValidationError on out-of-range values.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Applies one `key = value` setting. Unknown keys and malformed values raise
/// ParseError naming the key and line.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   std::size_t line = 0);

/// Parses a whole document on top of `base`, then validates the result.
RunConfig parse_config(std::string_view text, RunConfig base = {});

/// Renders every field so that parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

using CsvCell = std::variant<double, long long, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(const std::vector<CsvCell>& cells);
  void write(std::ostream& os) const;
  std::string str() const;
};

/// Renders with 9 significant digits.
std::string format_number(double value);

CsvTable spectrum_table(const RunConfig& config);
CsvTable cycle_table(const RunConfig& config);
CsvTable sweep_table(const RunConfig& config);

struct PowerTables {
  CsvTable trace;
  CsvTable summary;
  double gamma0 = 0.0;
};

PowerTables power_tables(const RunConfig& config);

/// Exit codes of the simulator.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitDomain = 2, kExitIo = 3 };

/// Runs the configured command, writing CSV to config.output (stdout when
/// unset). Power also writes `<stem>_summary<ext>` next to the trace; on
/// stdout the summary follows the trace after a blank line. Diagnostics and
/// the effective config go to `log`.
int run(const RunConfig& config, std::ostream& stdout_stream, std::ostream& log);

}  // namespace stirling
