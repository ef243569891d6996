#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "certopt/benchmarks.hpp"
#include "certopt/hybrid.hpp"
#include "certopt/result.hpp"

namespace certopt {

enum class RunMode { Hybrid, IbcOnly, DeOnly, DeterministicInterleaved };
enum class OutputFormat { Text, JsonLines, Csv };

std::optional<RunMode> parse_run_mode(std::string_view name);
std::optional<OutputFormat> parse_output_format(std::string_view name);

struct RunConfig {
  std::string function = "michalewicz";
  int n = 2;
  double epsilon = 1e-6;
  RunMode mode = RunMode::Hybrid;
  // DE parameters; unset fields take the per-function defaults.
  std::optional<int> population_size;
  std::optional<double> weight;
  std::optional<double> crossover_rate;
  std::uint64_t seed = 1;
  RanaSyntax rana_syntax = RanaSyntax::Rewritten;
  double time_limit_s = 120.0;
  OutputFormat format = OutputFormat::Text;
  std::string data_dir;
  std::int64_t de_generations = 1000;  // stopping rule for de-only
  bool stream_progress = false;
};

/// Throws std::invalid_argument on any out-of-range field.
void validate(const RunConfig& config);

/// Per-function default DE parameters with config overrides applied.
DeConfig de_parameters(const RunConfig& config);

/// Builds the problem and dispatches to the selected mode. de-only returns an
/// uncertified outcome: status timeout with the trivial lower bound and, when
/// the final best certifies as feasible, its certified upper bound.
CertifiedResult execute(const RunConfig& config, ProgressSink sink = {});

/// execute() plus progress/result serialization to `out`; returns the process
/// exit code (0 certified, 2 timeout, 3 infeasible).
int run(const RunConfig& config, std::ostream& out);

int exit_code(RunStatus status);

// Serialization. Times are omitted from json-lines in deterministic
// interleaved mode so that equal configurations produce identical bytes.
std::string to_json_line(const RunConfig& config, const CertifiedResult& result);
std::string progress_json_line(const ProgressRecord& record);
CertifiedResult result_from_json_line(const std::string& line);
std::string csv_header();
std::string csv_row(const RunConfig& config, const CertifiedResult& result);

struct RunOutcome {
  RunConfig config;
  CertifiedResult result;
};

/// Fixed-width summary table; certified values with seven decimals, solutions
/// with six, timeout rows showing the rigorous bracket.
std::string format_table(std::span<const RunOutcome> outcomes);

}  // namespace certopt
