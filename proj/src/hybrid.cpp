#include "certopt/hybrid.hpp"

#include <chrono>
#include <mutex>
#include <thread>
#include <utility>

namespace certopt {
namespace {

using steady = std::chrono::steady_clock;

double seconds_since(steady::time_point start) {
  return std::chrono::duration<double>(steady::now() - start).count();
}

ProgressSink synchronized(ProgressSink sink, std::mutex& mu) {
  if (!sink) return {};
  return [&mu, sink = std::move(sink)](const ProgressRecord& rec) {
    std::lock_guard lock(mu);
    sink(rec);
  };
}

CertifiedResult finalize(const IbcEngine& ibc, const DeEngine& de,
                         double wall_time_s) {
  CertifiedResult res = ibc.result();
  res.wall_time_s = wall_time_s;
  res.ne_de = de.certified_publications();
  res.objective_evals = de.objective_evaluations();
  res.generations = de.generation();
  return res;
}

}  // namespace

CertifiedResult run_hybrid(const BenchmarkProblem& problem,
                           const HybridConfig& cfg, ProgressSink sink) {
  auto start = steady::now();
  CooperationChannels channels;
  std::mutex sink_mu;
  ProgressSink shared_sink = synchronized(std::move(sink), sink_mu);

  IbcEngine ibc(problem, cfg.ibc, &channels, shared_sink);
  DeEngine de(problem, cfg.de, &channels, shared_sink);

  std::thread de_thread([&] {
    try {
      // Once the heuristic stops improving it backs off so that, on machines
      // with fewer cores than workers, it does not starve certification. It
      // keeps running and exchanging messages until termination.
      int stagnant_generations = 0;
      while (!channels.should_terminate()) {
        std::int64_t published = de.certified_publications();
        de.step();
        if (de.certified_publications() > published) {
          stagnant_generations = 0;
        } else if (++stagnant_generations > 128) {
          std::this_thread::sleep_for(std::chrono::milliseconds(1));
        }
      }
    } catch (...) {
      // The heuristic is best-effort; certification proceeds without it.
    }
  });
  while (ibc.step()) {
  }
  channels.request_terminate();
  de_thread.join();

  return finalize(ibc, de, seconds_since(start));
}

CertifiedResult run_interleaved(const BenchmarkProblem& problem,
                                const HybridConfig& cfg, ProgressSink sink) {
  auto start = steady::now();
  CooperationChannels channels;
  IbcEngine ibc(problem, cfg.ibc, &channels, sink);
  DeEngine de(problem, cfg.de, &channels, sink);

  for (;;) {
    de.step();
    if (!ibc.step()) break;
  }
  channels.request_terminate();

  return finalize(ibc, de, seconds_since(start));
}

CertifiedResult run_ibc_only(const BenchmarkProblem& problem,
                             const IbcConfig& cfg, ProgressSink sink) {
  return ibc_run(problem, cfg, nullptr, std::move(sink));
}

DeOnlyResult run_de_only(const BenchmarkProblem& problem, const DeConfig& cfg,
                         std::int64_t generations, double time_limit_s,
                         ProgressSink sink) {
  auto start = steady::now();
  DeEngine de(problem, cfg, nullptr, std::move(sink));
  while (de.generation() < generations &&
         seconds_since(start) < time_limit_s) {
    de.step();
  }
  DeOnlyResult res;
  res.best = de.best();
  res.objective_evals = de.objective_evaluations();
  res.generations = de.generation();
  res.wall_time_s = seconds_since(start);
  return res;
}

}  // namespace certopt
