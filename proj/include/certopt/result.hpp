#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

#include "certopt/box.hpp"

namespace certopt {

enum class RunStatus { Certified, Timeout, Infeasible };

std::string_view to_string(RunStatus status);

/// Outcome of a certifying run. Whatever the status, [lower_bound, best_ub]
/// is a rigorous bracket of the global minimum (empty problem: both infinite).
/// status == Certified implies best_ub - lower_bound <= epsilon.
struct CertifiedResult {
  RunStatus status = RunStatus::Infeasible;
  double best_ub = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  Vector incumbent;  // empty until a certified point is known
  double wall_time_s = 0.0;
  std::int64_t ne_de = 0;   // certified evaluations triggered by DE improvements
  std::int64_t ne_ibc = 0;  // natural-extension evaluations in the IB&C loop
  std::int64_t objective_evals = 0;  // plain-float objective evaluations
  std::int64_t iterations = 0;       // IB&C iterations
  std::int64_t generations = 0;      // DE generations
};

inline std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Certified:
      return "certified";
    case RunStatus::Timeout:
      return "timeout";
    case RunStatus::Infeasible:
      return "infeasible";
  }
  return "?";
}

}  // namespace certopt
