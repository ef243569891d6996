#include "certopt/de.hpp"

#include <cmath>
#include <stdexcept>

#include "certopt/eval.hpp"

namespace certopt {

bool prefer_incumbent(const EvalTriplet& x, const EvalTriplet& y) {
  if (x.violated != y.violated) return x.violated < y.violated;
  if (x.violated > 0) return x.violation_sum < y.violation_sum;
  return *x.objective < *y.objective;
}

Vector mutate_crossover(const Vector& x, const Vector& u, const Vector& v,
                        const Vector& w, const DeConfig& cfg,
                        std::mt19937_64& rng) {
  const auto n = x.size();
  std::uniform_int_distribution<Eigen::Index> pick_index(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Index forced = pick_index(rng);
  Vector y = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == forced || unit(rng) < cfg.crossover_rate) {
      y[j] = u[j] + cfg.weight * (v[j] - w[j]);
    }
  }
  return y;
}

double bounce_back(double y, double donor, const Interval& bounds, double r01) {
  if (y > bounds.hi) return donor + r01 * (bounds.hi - donor);
  if (y < bounds.lo) return donor + r01 * (bounds.lo - donor);
  return y;
}

EvalTriplet evaluate_triplet(const BenchmarkProblem& problem, const Vector& x) {
  EvalTriplet t;
  for (const Constraint& c : problem.constraints) {
    double g = eval_point(c.body, x);
    if (g > 0) {
      ++t.violated;
      t.violation_sum += g;
    }
  }
  if (t.violated == 0) t.objective = eval_point(problem.objective, x);
  return t;
}

DeEngine::DeEngine(const BenchmarkProblem& problem, const DeConfig& cfg,
                   CooperationChannels* channels, ProgressSink sink)
    : problem_(problem),
      cfg_(cfg),
      channels_(channels),
      sink_(std::move(sink)),
      rng_(cfg.seed) {
  if (cfg_.population_size < 4) {
    throw std::invalid_argument("DeConfig: population size must be >= 4");
  }
  if (!(cfg_.weight > 0)) {
    throw std::invalid_argument("DeConfig: weight must be positive");
  }
  if (cfg_.crossover_rate < 0 || cfg_.crossover_rate > 1) {
    throw std::invalid_argument("DeConfig: crossover rate must be in [0,1]");
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  population_.resize(static_cast<std::size_t>(cfg_.population_size));
  const int n = problem_.dimension;
  for (Individual& ind : population_) {
    ind.position.resize(n);
    for (int j = 0; j < n; ++j) {
      const Interval& dj = problem_.domain[j];
      ind.position[j] = dj.lo + unit(rng_) * (dj.hi - dj.lo);
    }
    ind.eval = evaluate_triplet(problem_, ind.position);
    if (ind.eval.feasible()) ++objective_evaluations_;
  }
  for (const Individual& ind : population_) {
    if (!has_best_ || !prefer_incumbent(best_.eval, ind.eval)) {
      best_ = ind;
      has_best_ = true;
    }
  }
  if (has_best_) certify_and_publish(best_);
}

void DeEngine::step() {
  consume_injections();

  std::uniform_int_distribution<int> pick(0, cfg_.population_size - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto np = population_.size();
  std::vector<Individual> next(np);

  for (std::size_t i = 0; i < np; ++i) {
    int a, b, c;
    do {
      a = pick(rng_);
    } while (a == static_cast<int>(i));
    do {
      b = pick(rng_);
    } while (b == static_cast<int>(i) || b == a);
    do {
      c = pick(rng_);
    } while (c == static_cast<int>(i) || c == a || c == b);

    Vector y = mutate_crossover(population_[i].position,
                                population_[static_cast<std::size_t>(a)].position,
                                population_[static_cast<std::size_t>(b)].position,
                                population_[static_cast<std::size_t>(c)].position,
                                cfg_, rng_);
    for (int j = 0; j < problem_.dimension; ++j) {
      if (!problem_.domain[j].contains(y[j])) {
        y[j] = bounce_back(y[j],
                           population_[static_cast<std::size_t>(a)].position[j],
                           problem_.domain[j], unit(rng_));
      }
    }

    EvalTriplet ty = evaluate_triplet(problem_, y);
    if (ty.feasible()) ++objective_evaluations_;
    if (prefer_incumbent(population_[i].eval, ty)) {
      next[i] = population_[i];
    } else {
      next[i] = Individual{std::move(y), ty};
    }
  }
  population_ = std::move(next);
  ++generation_;

  const Individual* gen_best = &population_.front();
  for (const Individual& ind : population_) {
    if (!prefer_incumbent(gen_best->eval, ind.eval)) gen_best = &ind;
  }
  if (!has_best_ || !prefer_incumbent(best_.eval, gen_best->eval)) {
    bool improved = !has_best_ || prefer_incumbent(gen_best->eval, best_.eval);
    best_ = *gen_best;
    has_best_ = true;
    if (improved) certify_and_publish(best_);
  }

  if (sink_) {
    ProgressRecord rec;
    rec.worker = WorkerTag::De;
    rec.step = generation_;
    rec.de_best_objective =
        best_.eval.objective.value_or(std::numeric_limits<double>::quiet_NaN());
    rec.de_best_violated = best_.eval.violated;
    rec.de_best_violation_sum = best_.eval.violation_sum;
    sink_(rec);
  }
}

void DeEngine::certify_and_publish(const Individual& candidate) {
  if (!channels_ || !candidate.eval.feasible()) return;
  // Constraint feasibility must hold under interval evaluation, not only in
  // plain floats; otherwise the bound is withheld.
  for (const Constraint& c : problem_.constraints) {
    if (!(certified_point_value(c.body, candidate.position).hi <= 0)) return;
  }
  Interval enclosure = certified_point_value(problem_.objective,
                                             candidate.position);
  ++certified_publications_;
  channels_->upper_bounds.publish({enclosure.hi, candidate.position});
}

void DeEngine::consume_injections() {
  if (!channels_) return;
  while (auto msg = channels_->injections.take()) {
    replace_worst(msg->point);
  }
}

void DeEngine::replace_worst(const Vector& point) {
  Vector clamped = point;
  for (int j = 0; j < problem_.dimension; ++j) {
    clamped[j] = std::clamp(clamped[j], problem_.domain[j].lo,
                            problem_.domain[j].hi);
  }
  std::size_t worst = 0;
  for (std::size_t i = 1; i < population_.size(); ++i) {
    if (prefer_incumbent(population_[worst].eval, population_[i].eval)) {
      worst = i;
    }
  }
  population_[worst].position = clamped;
  population_[worst].eval = evaluate_triplet(problem_, clamped);
  if (population_[worst].eval.feasible()) ++objective_evaluations_;
  if (!has_best_ || !prefer_incumbent(best_.eval, population_[worst].eval)) {
    bool improved =
        !has_best_ || prefer_incumbent(population_[worst].eval, best_.eval);
    best_ = population_[worst];
    has_best_ = true;
    if (improved) certify_and_publish(best_);
  }
}

}  // namespace certopt
