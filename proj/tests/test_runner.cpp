#include <doctest.h>

#include <cmath>
#include <sstream>

#include "certopt/runner.hpp"

using namespace certopt;

TEST_CASE("config validation rejects bad fields before any computation") {
  RunConfig config;
  config.function = "egg_holder";
  CHECK_NOTHROW(validate(config));

  config.epsilon = 0.0;
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config.epsilon = -1e-6;
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config = RunConfig{};
  config.function = "fourier";
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config = RunConfig{};
  config.population_size = 3;
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config = RunConfig{};
  config.crossover_rate = 1.5;
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config = RunConfig{};
  config.n = 1;
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
}

TEST_CASE("per-function DE defaults and overrides") {
  RunConfig config;
  config.function = "michalewicz";
  DeConfig de = de_parameters(config);
  CHECK(de.population_size == 50);
  CHECK(de.weight == 0.7);
  CHECK(de.crossover_rate == 0.0);

  config.function = "keane";
  de = de_parameters(config);
  CHECK(de.population_size == 70);
  CHECK(de.crossover_rate == 0.9);

  config.function = "egg_holder";
  de = de_parameters(config);
  CHECK(de.crossover_rate == 0.4);

  config.population_size = 128;
  config.crossover_rate = 0.25;
  de = de_parameters(config);
  CHECK(de.population_size == 128);
  CHECK(de.crossover_rate == 0.25);
}

TEST_CASE("execute certifies egg holder n=2 and maps exit codes") {
  RunConfig config;
  config.function = "egg_holder";
  config.n = 2;
  CertifiedResult res = execute(config);
  CHECK(res.status == RunStatus::Certified);
  CHECK(std::abs(res.best_ub - (-959.6406627)) <= 1e-6);
  CHECK(exit_code(res.status) == 0);
  CHECK(exit_code(RunStatus::Timeout) == 2);
  CHECK(exit_code(RunStatus::Infeasible) == 3);
}

TEST_CASE("json result line round-trips field for field") {
  RunConfig config;
  config.function = "rana";
  config.n = 2;
  config.mode = RunMode::DeterministicInterleaved;
  CertifiedResult res = execute(config);
  REQUIRE(res.status == RunStatus::Certified);

  CertifiedResult back = result_from_json_line(to_json_line(config, res));
  CHECK(back.status == res.status);
  CHECK(back.best_ub == res.best_ub);
  CHECK(back.lower_bound == res.lower_bound);
  REQUIRE(back.incumbent.size() == res.incumbent.size());
  for (int i = 0; i < res.incumbent.size(); ++i) {
    CHECK(back.incumbent[i] == res.incumbent[i]);
  }
  CHECK(back.ne_de == res.ne_de);
  CHECK(back.ne_ibc == res.ne_ibc);
  CHECK(back.objective_evals == res.objective_evals);
  CHECK(back.iterations == res.iterations);
  CHECK(back.generations == res.generations);
}

TEST_CASE("csv uses the fixed column order") {
  CHECK(csv_header() == "function,n,status,fbest,lb,time_s,ne_de,ne_ibc");
  RunConfig config;
  config.function = "michalewicz";
  config.n = 2;
  CertifiedResult res;
  res.status = RunStatus::Certified;
  res.best_ub = -1.5;
  res.lower_bound = -1.5000001;
  res.wall_time_s = 0.25;
  res.ne_de = 3;
  res.ne_ibc = 99;
  CHECK(csv_row(config, res) ==
        "michalewicz,2,certified,-1.5,-1.5000001,0.25,3,99");
}

TEST_CASE("printed values agree with the stored doubles") {
  RunConfig config;
  config.function = "egg_holder";
  config.n = 2;
  CertifiedResult res;
  res.status = RunStatus::Certified;
  res.best_ub = -959.64066268987;
  res.lower_bound = res.best_ub - 1e-6;
  res.incumbent = Vector(2);
  res.incumbent << 512.0, 404.231805;
  RunOutcome outcome{config, res};
  std::string table = format_table(std::span<const RunOutcome>(&outcome, 1));
  CHECK(table.find("-959.6406627") != std::string::npos);
  CHECK(table.find("512.000000 404.231805") != std::string::npos);

  SUBCASE("timeout rows show the bracket") {
    res.status = RunStatus::Timeout;
    res.lower_bound = -1000.0;
    RunOutcome t{config, res};
    std::string table2 = format_table(std::span<const RunOutcome>(&t, 1));
    CHECK(table2.find("[-1000.0000000, -959.6406627]") != std::string::npos);
  }

  SUBCASE("empty input renders the header only") {
    std::string empty = format_table({});
    CHECK(empty.find("function") != std::string::npos);
    CHECK(empty.find('\n') == empty.size() - 1);
  }
}

TEST_CASE("deterministic interleaved json-lines output is byte-identical") {
  RunConfig config;
  config.function = "rana";
  config.n = 2;
  config.mode = RunMode::DeterministicInterleaved;
  config.format = OutputFormat::JsonLines;
  config.stream_progress = true;
  config.seed = 2024;

  std::ostringstream first, second;
  int code1 = run(config, first);
  int code2 = run(config, second);
  CHECK(code1 == 0);
  CHECK(code2 == 0);
  CHECK(first.str() == second.str());
  CHECK(first.str().find("\"event\":\"result\"") != std::string::npos);
}

TEST_CASE("run emits text and csv formats") {
  RunConfig config;
  config.function = "michalewicz";
  config.n = 2;
  config.mode = RunMode::IbcOnly;

  std::ostringstream text;
  CHECK(run(config, text) == 0);
  CHECK(text.str().find("certified") != std::string::npos);

  config.format = OutputFormat::Csv;
  std::ostringstream csv;
  CHECK(run(config, csv) == 0);
  CHECK(csv.str().rfind("function,n,status", 0) == 0);
  CHECK(csv.str().find("michalewicz,2,certified") != std::string::npos);
}

TEST_CASE("de-only mode reports an uncertified outcome") {
  RunConfig config;
  config.function = "michalewicz";
  config.n = 2;
  config.mode = RunMode::DeOnly;
  config.de_generations = 300;
  CertifiedResult res = execute(config);
  CHECK(res.status == RunStatus::Timeout);
  CHECK(res.lower_bound == -std::numeric_limits<double>::infinity());
  CHECK(res.best_ub <= -1.7);  // near the known minimum, certified at a point
  CHECK(res.generations == 300);
}
