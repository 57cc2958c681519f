#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqcat/operators.hpp"

namespace sqcat::cli {

enum class Experiment { herald_surface, wigner, entropy, kerr_demo, minus_convert };
enum class OutputFormat { csv, json };

std::string to_string(Experiment e);
std::string to_string(OutputFormat f);

/// Thrown for invalid configurations; maps to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Closed range sampled at min, min + step, ... and always ending at max.
struct Range {
  double min = 0;
  double max = 0;
  double step = 0;

  std::vector<double> values() const;
  void validate(const std::string& name) const;
};

struct RunConfig {
  Experiment experiment = Experiment::herald_surface;
  Range r{0.2675, 0.9197, 0.02};
  Range q{0.1, 0.9, 0.1};
  int cutoff = 0;  // 0 picks the experiment default
  DisplacementMode displacement = DisplacementMode::series6;
  double grid_step = 0.02;
  double grid_half_width = 3.0;
  std::string state = "minus";  // wigner: vacuum, coherent, cat, even-cat, squeezed, plus, minus
  double a = 1.0;               // coherent and cat amplitude
  double r_state = 1.0;         // squeezing of the wigner state, and of minus-convert
  std::vector<double> alphas{3.0};  // kerr-demo probe amplitudes
  double t_step = 1e-3;             // minus-convert transmittance grid
  std::string source = "analytic";  // minus-convert input: analytic or scheme
  OutputFormat format = OutputFormat::csv;
  std::string out;  // empty writes to stdout
  unsigned threads = 0;

  int effective_cutoff() const;
  /// Throws UsageError on inconsistent settings.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

int default_cutoff(Experiment e);
int minimum_cutoff(Experiment e);

/// Result of one experiment: metadata plus a numeric table.
struct Table {
  nlohmann::ordered_json metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table run_herald_surface(const RunConfig& config);
Table run_wigner(const RunConfig& config);
Table run_entropy(const RunConfig& config);
Table run_kerr_demo(const RunConfig& config);
Table run_minus_convert(const RunConfig& config);
Table run_experiment(const RunConfig& config);

/// CSV: one '#'-prefixed JSON metadata line, a header, then rows in %.17g.
/// JSON: {"metadata", "columns", "rows"}.
std::string render(const Table& table, OutputFormat format);

/// Writes through a sibling temporary file and renames it into place.
void write_atomically(const std::string& path, const std::string& content);

/// Parses arguments into a config. Returns std::nullopt when help was printed.
std::optional<RunConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out);

/// Full command: parse, run, write. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqcat::cli
