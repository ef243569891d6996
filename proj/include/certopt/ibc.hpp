#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "certopt/benchmarks.hpp"
#include "certopt/channel.hpp"
#include "certopt/progress.hpp"
#include "certopt/result.hpp"

namespace certopt {

struct IbcConfig {
  double epsilon = 1e-6;
  /// Boxes with every component narrower than this are resolved by the
  /// midpoint test and dropped instead of bisected, preventing unbounded
  /// splitting at the incumbent. Enclosures over such boxes are orders of
  /// magnitude tighter than epsilon, so the drop coincides with the cut-off;
  /// keep min_width well below epsilon times the problem scale.
  double min_width = 1e-12;
  double time_limit_s = std::numeric_limits<double>::infinity();
  /// First-order pruning (applies to unconstrained problems only).
  bool use_stationarity = true;
  /// Contraction pass budget per iteration; children re-contract anyway, so a
  /// small budget trades fixpoint sharpness against queue throughput.
  int contraction_passes = 2;
  /// Track discarded-plus-queued volume against the domain volume (n <= 3).
  bool audit_coverage = false;
};

/// Work item: a box and the lower bound of the objective extension over it at
/// insertion time.
struct QueueEntry {
  Box box;
  double lower_bound = -std::numeric_limits<double>::infinity();
  std::uint64_t sequence = 0;
};

/// Cut-off test: a box whose lower bound cannot undercut the incumbent by
/// more than epsilon is discarded; the relaxation makes termination finite
/// while preserving best_ub - f* <= epsilon.
bool cut_off_discards(double lower_bound, double best_ub, double epsilon);

/// Interval certification of a point: returns the certified upper bound of
/// the objective when every constraint enclosure proves hi <= 0, nullopt when
/// feasibility cannot be certified.
std::optional<double> certified_upper_bound_at(const BenchmarkProblem& problem,
                                               const Vector& x);

/// Best-first interval branch-and-contract. One step() extracts a box, runs
/// the cut-off test, contracts with the problem constraints plus the cut-off
/// constraint, applies first-order pruning, updates the incumbent through the
/// midpoint test, bisects and reinserts. Received upper bounds fold in by
/// minimum each iteration; improving midpoints are published as injections.
class IbcEngine {
 public:
  IbcEngine(const BenchmarkProblem& problem, const IbcConfig& cfg,
            CooperationChannels* channels = nullptr, ProgressSink sink = {});

  /// Processes one queue entry; false once the queue is empty or the time
  /// limit is exceeded.
  bool step();

  bool finished() const { return finished_; }
  CertifiedResult result() const;

  double best_ub() const { return best_ub_; }
  /// Rigorous global lower bound: min over queued boxes and the cut-off
  /// threshold of everything discarded so far.
  double global_lower_bound() const;
  std::size_t queue_size() const { return queue_.size(); }
  std::int64_t iterations() const { return iterations_; }
  std::int64_t extension_evaluations() const { return ne_ibc_; }

  /// Midpoint test, exposed for direct verification: certifies m(box) and
  /// tightens the incumbent when it improves.
  void midpoint_test(const Box& box);

  /// Coverage audit: |discarded + queued - domain volume| / domain volume,
  /// valid at any iteration boundary. Requires audit_coverage.
  double coverage_error() const;

 private:
  void drain_channel();
  bool strictly_interior(const Box& box) const;

  const BenchmarkProblem& problem_;
  IbcConfig cfg_;
  CooperationChannels* channels_;
  ProgressSink sink_;
  /// Symbolic gradient components, populated for unconstrained abs-free
  /// objectives; propagated as equalities on strictly interior boxes.
  std::vector<Expr> gradient_exprs_;

  struct WorstFirst {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
      if (a.lower_bound != b.lower_bound) return a.lower_bound > b.lower_bound;
      return a.sequence > b.sequence;  // ties: oldest first
    }
  };
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, WorstFirst> queue_;

  double best_ub_ = std::numeric_limits<double>::infinity();
  Vector incumbent_;
  std::uint64_t next_sequence_ = 0;
  std::int64_t iterations_ = 0;
  std::int64_t ne_ibc_ = 0;
  bool finished_ = false;
  bool timed_out_ = false;
  double started_at_ = 0.0;
  double discarded_volume_ = 0.0;
  double queued_volume_ = 0.0;
  double domain_volume_ = 0.0;
};

/// Runs the loop to completion (or time limit) and returns the result.
CertifiedResult ibc_run(const BenchmarkProblem& problem, const IbcConfig& cfg,
                        CooperationChannels* channels = nullptr,
                        ProgressSink sink = {});

}  // namespace certopt
