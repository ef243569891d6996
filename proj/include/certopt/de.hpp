#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "certopt/benchmarks.hpp"
#include "certopt/channel.hpp"
#include "certopt/progress.hpp"

namespace certopt {

struct DeConfig {
  int population_size = 50;    // NP >= 4
  double weight = 0.7;         // W > 0
  double crossover_rate = 0.5; // CR in [0, 1]
  std::uint64_t seed = 1;
};

/// Constrained fitness: objective present only when no constraint is
/// violated; violation_sum collects the positive excesses sum(max(g_i, 0)).
struct EvalTriplet {
  std::optional<double> objective;
  int violated = 0;
  double violation_sum = 0.0;

  bool feasible() const { return violated == 0; }
};

/// Selection order between an incumbent x and a challenger y; true keeps x.
/// Ties go to the challenger.
bool prefer_incumbent(const EvalTriplet& x, const EvalTriplet& y);

struct Individual {
  Vector position;
  EvalTriplet eval;
};

/// y_j = u_j + W (v_j - w_j) where j = R or r_j < CR, else x_j. R is a random
/// index guaranteeing at least one mutated component.
Vector mutate_crossover(const Vector& x, const Vector& u, const Vector& v,
                        const Vector& w, const DeConfig& cfg,
                        std::mt19937_64& rng);

/// Bounce-back repair of one component: an out-of-bounds value is resampled
/// between the donor coordinate and the violated bound (r01 uniform in [0,1)).
double bounce_back(double y, double donor, const Interval& bounds, double r01);

EvalTriplet evaluate_triplet(const BenchmarkProblem& problem, const Vector& x);

/// Synchronous generational differential evolution over one problem.
/// When channels are attached, every improvement of the population best is
/// re-evaluated with interval arithmetic; only interval-certified bounds at
/// interval-certified-feasible points are published. Injected points replace
/// the worst population member.
class DeEngine {
 public:
  DeEngine(const BenchmarkProblem& problem, const DeConfig& cfg,
           CooperationChannels* channels = nullptr, ProgressSink sink = {});

  /// Runs one generation.
  void step();

  const Individual& best() const { return best_; }
  std::int64_t generation() const { return generation_; }
  std::int64_t certified_publications() const { return certified_publications_; }
  std::int64_t objective_evaluations() const { return objective_evaluations_; }
  const std::vector<Individual>& population() const { return population_; }

 private:
  void certify_and_publish(const Individual& candidate);
  void consume_injections();
  void replace_worst(const Vector& point);

  const BenchmarkProblem& problem_;
  DeConfig cfg_;
  CooperationChannels* channels_;
  ProgressSink sink_;
  std::mt19937_64 rng_;
  std::vector<Individual> population_;
  Individual best_;
  bool has_best_ = false;
  std::int64_t generation_ = 0;
  std::int64_t certified_publications_ = 0;
  std::int64_t objective_evaluations_ = 0;
};

}  // namespace certopt
