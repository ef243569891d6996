#include "certopt/runner.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace certopt {
namespace {

using nlohmann::json;

// Shortest representation that parses back to the same double.
std::string dump_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json number_or_tag(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

double parse_number_or_tag(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    return j.get<std::string>() == "inf"
               ? std::numeric_limits<double>::infinity()
               : -std::numeric_limits<double>::infinity();
  }
  return j.get<double>();
}

std::string format_solution(const Vector& x, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) out << ' ';
    out << x[i];
  }
  return out.str();
}

}  // namespace

std::optional<RunMode> parse_run_mode(std::string_view name) {
  if (name == "hybrid") return RunMode::Hybrid;
  if (name == "ibc-only" || name == "ibc") return RunMode::IbcOnly;
  if (name == "de-only" || name == "de") return RunMode::DeOnly;
  if (name == "deterministic-interleaved" || name == "interleaved") {
    return RunMode::DeterministicInterleaved;
  }
  return std::nullopt;
}

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "json-lines" || name == "jsonl") return OutputFormat::JsonLines;
  if (name == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

void validate(const RunConfig& config) {
  if (!parse_benchmark(config.function)) {
    throw std::invalid_argument("unknown function: " + config.function);
  }
  if (config.n < 2) throw std::invalid_argument("n must be >= 2");
  if (!(config.epsilon > 0)) throw std::invalid_argument("epsilon must be > 0");
  if (config.population_size && *config.population_size < 4) {
    throw std::invalid_argument("population size must be >= 4");
  }
  if (config.weight && !(*config.weight > 0)) {
    throw std::invalid_argument("weight must be > 0");
  }
  if (config.crossover_rate &&
      (*config.crossover_rate < 0 || *config.crossover_rate > 1)) {
    throw std::invalid_argument("crossover rate must be in [0,1]");
  }
  if (!(config.time_limit_s > 0)) {
    throw std::invalid_argument("time limit must be > 0");
  }
  if (config.de_generations < 1) {
    throw std::invalid_argument("de generations must be >= 1");
  }
}

DeConfig de_parameters(const RunConfig& config) {
  DeConfig de;
  de.seed = config.seed;
  // Per-function defaults (population, weight, crossover).
  switch (*parse_benchmark(config.function)) {
    case Benchmark::Michalewicz:
      de = {50, 0.7, 0.0, config.seed};
      break;
    case Benchmark::SineEnvelope:
      de = {50, 0.7, 0.9, config.seed};
      break;
    case Benchmark::Shekel:
      de = {50, 0.7, 0.9, config.seed};
      break;
    case Benchmark::EggHolder:
      de = {50, 0.7, 0.4, config.seed};
      break;
    case Benchmark::Rana:
      de = {50, 0.7, 0.5, config.seed};
      break;
    case Benchmark::Keane:
      de = {70, 0.7, 0.9, config.seed};
      break;
  }
  if (config.population_size) de.population_size = *config.population_size;
  if (config.weight) de.weight = *config.weight;
  if (config.crossover_rate) de.crossover_rate = *config.crossover_rate;
  return de;
}

CertifiedResult execute(const RunConfig& config, ProgressSink sink) {
  validate(config);
  MakeOptions options;
  options.rana_syntax = config.rana_syntax;
  options.data_dir = config.data_dir;
  BenchmarkProblem problem = make_problem(config.function, config.n, options);

  HybridConfig hybrid;
  hybrid.ibc.epsilon = config.epsilon;
  hybrid.ibc.time_limit_s = config.time_limit_s;
  hybrid.de = de_parameters(config);

  switch (config.mode) {
    case RunMode::Hybrid:
      return run_hybrid(problem, hybrid, std::move(sink));
    case RunMode::DeterministicInterleaved:
      return run_interleaved(problem, hybrid, std::move(sink));
    case RunMode::IbcOnly:
      return run_ibc_only(problem, hybrid.ibc, std::move(sink));
    case RunMode::DeOnly: {
      DeOnlyResult de = run_de_only(problem, hybrid.de, config.de_generations,
                                    config.time_limit_s, std::move(sink));
      CertifiedResult res;
      res.status = RunStatus::Timeout;  // heuristic outcome, never certified
      res.lower_bound = -std::numeric_limits<double>::infinity();
      res.wall_time_s = de.wall_time_s;
      res.objective_evals = de.objective_evals;
      res.generations = de.generations;
      if (de.best.eval.feasible()) {
        if (auto ub = certified_upper_bound_at(problem, de.best.position)) {
          res.best_ub = *ub;
          res.incumbent = de.best.position;
          res.ne_de = 1;
        }
      }
      return res;
    }
  }
  throw std::logic_error("unreachable run mode");
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::Certified:
      return 0;
    case RunStatus::Timeout:
      return 2;
    case RunStatus::Infeasible:
      return 3;
  }
  return 1;
}

std::string to_json_line(const RunConfig& config, const CertifiedResult& result) {
  json j;
  j["event"] = "result";
  j["function"] = config.function;
  j["n"] = config.n;
  j["status"] = std::string(to_string(result.status));
  j["fbest"] = number_or_tag(result.best_ub);
  j["lb"] = number_or_tag(result.lower_bound);
  std::vector<double> x(result.incumbent.data(),
                        result.incumbent.data() + result.incumbent.size());
  j["x"] = x;
  if (config.mode != RunMode::DeterministicInterleaved) {
    j["time_s"] = result.wall_time_s;
  }
  j["ne_de"] = result.ne_de;
  j["ne_ibc"] = result.ne_ibc;
  j["f_evals"] = result.objective_evals;
  j["iterations"] = result.iterations;
  j["generations"] = result.generations;
  return j.dump();
}

std::string progress_json_line(const ProgressRecord& record) {
  json j;
  if (record.worker == WorkerTag::Ibc) {
    j["worker"] = "ibc";
    j["event"] = "iteration";
    j["iter"] = record.step;
    j["fbest"] = number_or_tag(record.best_ub);
    j["lb"] = number_or_tag(record.lower_bound);
    j["queue"] = record.queue_size;
  } else {
    j["worker"] = "de";
    j["event"] = "generation";
    j["gen"] = record.step;
    j["best_f"] = number_or_tag(record.de_best_objective);
    j["n_viol"] = record.de_best_violated;
    j["s_viol"] = record.de_best_violation_sum;
  }
  return j.dump();
}

CertifiedResult result_from_json_line(const std::string& line) {
  json j = json::parse(line);
  CertifiedResult res;
  std::string status = j.at("status").get<std::string>();
  res.status = status == "certified"
                   ? RunStatus::Certified
                   : (status == "timeout" ? RunStatus::Timeout
                                          : RunStatus::Infeasible);
  res.best_ub = parse_number_or_tag(j.at("fbest"));
  res.lower_bound = parse_number_or_tag(j.at("lb"));
  auto xs = j.at("x").get<std::vector<double>>();
  if (!xs.empty()) {
    res.incumbent = Eigen::Map<const Vector>(
        xs.data(), static_cast<Eigen::Index>(xs.size()));
  }
  if (j.contains("time_s")) res.wall_time_s = j.at("time_s").get<double>();
  res.ne_de = j.at("ne_de").get<std::int64_t>();
  res.ne_ibc = j.at("ne_ibc").get<std::int64_t>();
  res.objective_evals = j.at("f_evals").get<std::int64_t>();
  res.iterations = j.at("iterations").get<std::int64_t>();
  res.generations = j.at("generations").get<std::int64_t>();
  return res;
}

std::string csv_header() {
  return "function,n,status,fbest,lb,time_s,ne_de,ne_ibc";
}

std::string csv_row(const RunConfig& config, const CertifiedResult& result) {
  std::ostringstream out;
  out << config.function << ',' << config.n << ','
      << to_string(result.status) << ',' << dump_double(result.best_ub) << ','
      << dump_double(result.lower_bound) << ','
      << dump_double(result.wall_time_s) << ',' << result.ne_de << ','
      << result.ne_ibc;
  return out.str();
}

std::string format_table(std::span<const RunOutcome> outcomes) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "function" << std::setw(4) << "n"
      << std::setw(11) << "status" << std::setw(26) << "minimum"
      << std::setw(10) << "time(s)" << "evaluations (NE_DE + NE_IBC)" << '\n';
  for (const RunOutcome& o : outcomes) {
    std::ostringstream value;
    value << std::fixed << std::setprecision(7);
    if (o.result.status == RunStatus::Certified) {
      value << o.result.best_ub;
    } else if (o.result.best_ub ==
               std::numeric_limits<double>::infinity()) {
      value << "-";
    } else {
      value << "[" << o.result.lower_bound << ", " << o.result.best_ub << "]";
    }
    std::ostringstream time;
    time << std::fixed << std::setprecision(2) << o.result.wall_time_s;
    out << std::left << std::setw(14) << o.config.function << std::setw(4)
        << o.config.n << std::setw(11) << to_string(o.result.status)
        << std::setw(26) << value.str() << std::setw(10) << time.str()
        << o.result.ne_de << " + " << o.result.ne_ibc << '\n';
    if (o.result.incumbent.size() > 0) {
      out << "  x = (" << format_solution(o.result.incumbent, 6) << ")\n";
    }
  }
  return out.str();
}

int run(const RunConfig& config, std::ostream& out) {
  validate(config);
  ProgressSink sink;
  if (config.stream_progress && config.format == OutputFormat::JsonLines) {
    sink = [&out](const ProgressRecord& rec) {
      out << progress_json_line(rec) << '\n';
    };
  }
  CertifiedResult result = execute(config, std::move(sink));
  switch (config.format) {
    case OutputFormat::Text: {
      out << config.function << " n=" << config.n << ": "
          << to_string(result.status) << '\n';
      out << std::setprecision(17) << "  f_best = " << result.best_ub
          << "  (lower bound " << result.lower_bound << ")\n";
      if (result.incumbent.size() > 0) {
        out << "  x = (" << format_solution(result.incumbent, 6) << ")\n";
      }
      out << std::fixed << std::setprecision(3)
          << "  time (s): " << result.wall_time_s << '\n';
      out.unsetf(std::ios::fixed);
      out << "  evaluations: " << result.ne_de << " + " << result.ne_ibc
          << " interval, " << result.objective_evals << " objective\n";
      break;
    }
    case OutputFormat::JsonLines:
      out << to_json_line(config, result) << '\n';
      break;
    case OutputFormat::Csv:
      out << csv_header() << '\n' << csv_row(config, result) << '\n';
      break;
  }
  return exit_code(result.status);
}

}  // namespace certopt
