#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "certopt/box.hpp"
#include "certopt/contract.hpp"
#include "certopt/expr.hpp"

namespace certopt {

enum class Benchmark {
  Michalewicz,
  SineEnvelope,
  Shekel,
  EggHolder,
  Rana,
  Keane,
};

enum class RanaSyntax { Original, Rewritten };

/// A published minimum used as a regression reference.
struct ReferenceMinimum {
  double value = 0.0;
  Vector solution;
};

struct BenchmarkProblem {
  std::string name;
  int dimension = 0;
  Expr objective;
  std::vector<Constraint> constraints;
  Box domain;
  std::optional<ReferenceMinimum> known_minimum;
};

/// Shekel's foxholes data: 30 centers in up to 10 dimensions plus the
/// positive offsets c (denominators never vanish).
struct ShekelData {
  Eigen::Matrix<double, 30, 10> centers;
  Eigen::Matrix<double, 30, 1> offsets;
};

struct MakeOptions {
  RanaSyntax rana_syntax = RanaSyntax::Original;
  /// Directory holding shekel_foxholes.txt and reference_minima.csv;
  /// empty selects default_data_dir().
  std::string data_dir;
  /// Attach the published minimum for (name, n) when the reference file is
  /// present.
  bool attach_reference = true;
};

/// Builds one of the six test problems for dimension n >= 2.
/// Throws std::invalid_argument for unknown names or unsupported n, and
/// std::runtime_error when Shekel data cannot be loaded.
BenchmarkProblem make_problem(Benchmark which, int n,
                              const MakeOptions& options = {});
BenchmarkProblem make_problem(std::string_view name, int n,
                              const MakeOptions& options = {});

std::optional<Benchmark> parse_benchmark(std::string_view name);
std::string_view benchmark_name(Benchmark which);

/// Fitted linear putative-minimum formulas; available for Michalewicz,
/// Sine Envelope, Egg Holder and Rana.
std::optional<double> putative_minimum(Benchmark which, int n);

ShekelData load_shekel_data(const std::string& path);

struct ReferenceRecord {
  std::string function;
  int n = 0;
  double value = 0.0;
  Vector solution;
};

std::vector<ReferenceRecord> load_reference_minima(const std::string& path);
std::optional<ReferenceRecord> find_reference(
    const std::vector<ReferenceRecord>& records, std::string_view function,
    int n);

/// CERTOPT_DATA_DIR from the environment, else the directory baked in at
/// configure time.
std::string default_data_dir();

}  // namespace certopt
