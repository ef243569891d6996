#pragma once

#include "certopt/de.hpp"
#include "certopt/ibc.hpp"

namespace certopt {

struct HybridConfig {
  IbcConfig ibc;
  DeConfig de;
};

/// Two-worker cooperation: the heuristic supplies certified upper bounds, the
/// certifying engine supplies promising midpoints, and termination is decided
/// by the certifying engine alone. Certification semantics are identical to
/// running the certifying engine by itself; cooperation affects speed only.
CertifiedResult run_hybrid(const BenchmarkProblem& problem,
                           const HybridConfig& cfg, ProgressSink sink = {});

/// Single-worker interleaving (one DE generation, one IB&C iteration, ...)
/// over the same channels; bit-reproducible for a fixed seed.
CertifiedResult run_interleaved(const BenchmarkProblem& problem,
                                const HybridConfig& cfg, ProgressSink sink = {});

CertifiedResult run_ibc_only(const BenchmarkProblem& problem,
                             const IbcConfig& cfg, ProgressSink sink = {});

struct DeOnlyResult {
  Individual best;
  std::int64_t objective_evals = 0;
  std::int64_t generations = 0;
  double wall_time_s = 0.0;
};

/// Heuristic run without certification; stops after `generations` or when the
/// time limit elapses.
DeOnlyResult run_de_only(const BenchmarkProblem& problem, const DeConfig& cfg,
                         std::int64_t generations, double time_limit_s,
                         ProgressSink sink = {});

}  // namespace certopt
