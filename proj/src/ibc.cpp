#include "certopt/ibc.hpp"

#include <chrono>
#include <cmath>

#include "certopt/eval.hpp"

namespace certopt {
namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

bool cut_off_discards(double lower_bound, double best_ub, double epsilon) {
  return lower_bound >= best_ub - epsilon;
}

std::optional<double> certified_upper_bound_at(const BenchmarkProblem& problem,
                                               const Vector& x) {
  for (const Constraint& c : problem.constraints) {
    if (!(certified_point_value(c.body, x).hi <= 0)) return std::nullopt;
  }
  return certified_point_value(problem.objective, x).hi;
}

IbcEngine::IbcEngine(const BenchmarkProblem& problem, const IbcConfig& cfg,
                     CooperationChannels* channels, ProgressSink sink)
    : problem_(problem),
      cfg_(cfg),
      channels_(channels),
      sink_(std::move(sink)) {
  started_at_ = now_seconds();
  domain_volume_ = problem_.domain.volume();
  if (cfg_.use_stationarity && problem_.constraints.empty() &&
      !contains_abs(problem_.objective)) {
    gradient_exprs_.reserve(static_cast<std::size_t>(problem_.dimension));
    for (int i = 0; i < problem_.dimension; ++i) {
      gradient_exprs_.push_back(differentiate(problem_.objective, i));
    }
  }
  Interval root_bound = natural_extension(problem_.objective, problem_.domain);
  ++ne_ibc_;
  if (cfg_.audit_coverage) queued_volume_ += domain_volume_;
  queue_.push({problem_.domain, root_bound.lo, next_sequence_++});
}

bool IbcEngine::strictly_interior(const Box& box) const {
  for (int i = 0; i < box.size(); ++i) {
    if (box[i].lo <= problem_.domain[i].lo ||
        box[i].hi >= problem_.domain[i].hi) {
      return false;
    }
  }
  return true;
}

double IbcEngine::global_lower_bound() const {
  double lb = queue_.empty() ? kInf : queue_.top().lower_bound;
  if (best_ub_ < kInf) lb = std::min(lb, best_ub_ - cfg_.epsilon);
  return lb;
}

double IbcEngine::coverage_error() const {
  if (domain_volume_ <= 0) return 0.0;
  return std::abs(discarded_volume_ + queued_volume_ - domain_volume_) /
         domain_volume_;
}

void IbcEngine::drain_channel() {
  if (!channels_) return;
  if (auto msg = channels_->upper_bounds.take()) {
    if (msg->value < best_ub_) {
      best_ub_ = msg->value;
      incumbent_ = msg->point;
    }
  }
}

void IbcEngine::midpoint_test(const Box& box) {
  Vector m = box.midpoint();
  std::optional<double> ub = certified_upper_bound_at(problem_, m);
  if (ub) ++ne_ibc_;
  if (ub && *ub < best_ub_) {
    best_ub_ = *ub;
    incumbent_ = m;
    if (channels_) channels_->injections.publish({m});
  }
}

bool IbcEngine::step() {
  if (finished_) return false;
  if (queue_.empty()) {
    finished_ = true;
    return false;
  }
  if (now_seconds() - started_at_ > cfg_.time_limit_s) {
    finished_ = true;
    timed_out_ = true;
    return false;
  }

  drain_channel();

  QueueEntry entry = queue_.top();
  queue_.pop();
  ++iterations_;
  const bool audit = cfg_.audit_coverage;
  if (audit) queued_volume_ -= entry.box.volume();

  do {
    if (cut_off_discards(entry.lower_bound, best_ub_, cfg_.epsilon)) {
      if (audit) discarded_volume_ += entry.box.volume();
      break;
    }

    // Contract with the problem constraints, the cut-off constraint
    // f <= best_ub (re-normalized from the latest incumbent value), and, on
    // strictly interior boxes of smooth unconstrained objectives, the
    // stationarity equalities grad f = 0.
    std::vector<BoundedConstraint> active;
    active.reserve(problem_.constraints.size() + 1 + gradient_exprs_.size());
    for (const Constraint& c : problem_.constraints) {
      active.push_back({&c.body, Interval(-kInf, 0.0)});
    }
    if (best_ub_ < kInf) {
      active.push_back({&problem_.objective, Interval(-kInf, best_ub_)});
    }
    if (!gradient_exprs_.empty() && strictly_interior(entry.box)) {
      for (const Expr& g : gradient_exprs_) {
        active.push_back({&g, Interval(0.0, 0.0)});
      }
    }
    Box box = entry.box;
    if (!active.empty()) {
      ContractionResult contracted =
          fixpoint_contract(std::span<const BoundedConstraint>(active), box,
                            0.01, cfg_.contraction_passes);
      if (best_ub_ < kInf) ne_ibc_ += contracted.passes;
      if (contracted.box.is_empty()) {
        if (audit) discarded_volume_ += box.volume();
        break;
      }
      if (audit) {
        discarded_volume_ += box.volume() - contracted.box.volume();
      }
      box = std::move(contracted.box);
    }

    // First-order pruning for objectives whose gradient is set-valued (abs
    // kinks); smooth unconstrained objectives are already covered by the
    // stationarity equalities above.
    if (cfg_.use_stationarity && problem_.constraints.empty() &&
        gradient_exprs_.empty() &&
        stationarity_prune(problem_.objective, box, problem_.domain) ==
            BoxFate::Discard) {
      if (audit) discarded_volume_ += box.volume();
      break;
    }

    midpoint_test(box);

    if (box.max_width() <= cfg_.min_width) {
      if (audit) discarded_volume_ += box.volume();
      break;
    }

    auto [left, right] = bisect(box);
    for (Box* child : {&left, &right}) {
      Interval bound = natural_extension(problem_.objective, *child);
      ++ne_ibc_;
      double lb = std::max(entry.lower_bound, bound.lo);
      if (cut_off_discards(lb, best_ub_, cfg_.epsilon)) {
        if (audit) discarded_volume_ += child->volume();
      } else {
        if (audit) queued_volume_ += child->volume();
        queue_.push({std::move(*child), lb, next_sequence_++});
      }
    }
  } while (false);

  if (sink_) {
    ProgressRecord rec;
    rec.worker = WorkerTag::Ibc;
    rec.step = iterations_;
    rec.best_ub = best_ub_;
    rec.lower_bound = global_lower_bound();
    rec.queue_lower_bound = queue_.empty() ? kInf : queue_.top().lower_bound;
    rec.queue_size = queue_.size();
    sink_(rec);
  }
  return true;
}

CertifiedResult IbcEngine::result() const {
  CertifiedResult res;
  res.best_ub = best_ub_;
  res.incumbent = incumbent_;
  res.ne_ibc = ne_ibc_;
  res.iterations = iterations_;
  if (timed_out_) {
    res.status = RunStatus::Timeout;
    res.lower_bound = global_lower_bound();
  } else if (best_ub_ == kInf) {
    res.status = RunStatus::Infeasible;
    res.lower_bound = kInf;
  } else {
    res.status = RunStatus::Certified;
    res.lower_bound = best_ub_ - cfg_.epsilon;
  }
  return res;
}

CertifiedResult ibc_run(const BenchmarkProblem& problem, const IbcConfig& cfg,
                        CooperationChannels* channels, ProgressSink sink) {
  double start = now_seconds();
  IbcEngine engine(problem, cfg, channels, std::move(sink));
  while (engine.step()) {
  }
  CertifiedResult res = engine.result();
  res.wall_time_s = now_seconds() - start;
  return res;
}

}  // namespace certopt
