#pragma once

#include <cstdint>
#include <functional>
#include <limits>

namespace certopt {

enum class WorkerTag { Ibc, De };

/// One progress event from either worker. Fields not applicable to the
/// emitting worker keep their defaults.
struct ProgressRecord {
  WorkerTag worker = WorkerTag::Ibc;
  std::int64_t step = 0;  // IB&C iteration or DE generation

  // IB&C fields
  double best_ub = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  /// Min over queued entries alone (+inf when empty); nondecreasing.
  double queue_lower_bound = std::numeric_limits<double>::infinity();
  std::size_t queue_size = 0;

  // DE fields (best triplet, flattened; objective is NaN while infeasible)
  double de_best_objective = std::numeric_limits<double>::quiet_NaN();
  int de_best_violated = 0;
  double de_best_violation_sum = 0.0;
};

using ProgressSink = std::function<void(const ProgressRecord&)>;

}  // namespace certopt
