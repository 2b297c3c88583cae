#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "driftbench/classifier.hpp"
#include "driftbench/drift_model.hpp"

namespace driftbench {

/// Per-step 0-1 losses of one (scenario, learner, seed) run.
struct RunTrace {
    std::string scenario;
    std::string learner;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> losses;

    double final_error() const;
};

/// Interleaved test-then-train: each pattern is scored against the current
/// model, then used to train it.  Single pass, no lookahead.
RunTrace prequential_run(const Scenario& scenario, const LearnerConfig& learner,
                         std::uint64_t seed);

/// Same discipline over an already-constructed (and already-reset) model.
RunTrace prequential_run(const Scenario& scenario, Classifier& model,
                         const std::string& learner_id, std::uint64_t seed);

/// Mean 0-1 loss over the first n patterns, 1 <= n <= length.
double ae_cum(const RunTrace& trace, long n);

/// Mean 0-1 loss over the w most recent patterns ending at n (w >= 1, n >= w).
double ae_win(const RunTrace& trace, long n, long w);

struct MetricPoint {
    long n = 0;
    int loss = 0;
    double ae_cum = 0.0;
    double ae_win = 0.0;
    bool ae_win_valid = false;  // false while n < w
};

std::vector<MetricPoint> metric_series(const RunTrace& trace, long window);

struct CellResult {
    std::string scenario;
    std::string learner;
    std::vector<double> seed_finals;   // ordered by seed 1..k
    double mean_final = 0.0;
    std::vector<double> mean_ae_win;   // seed-averaged curve, n = window..length
    bool in_best_group = false;        // filled by significance_groups
};

struct RunFailure {
    std::string scenario;
    std::string learner;
    std::uint64_t seed = 0;
    std::string message;
};

struct ExperimentResult {
    std::vector<std::string> scenario_names;
    std::vector<LearnerConfig> learners;
    int seeds = 0;
    long window = 0;
    std::vector<CellResult> cells;  // scenario-major, learner-minor
    std::vector<RunFailure> failures;

    const CellResult* find(const std::string& scenario, const std::string& learner) const;
    CellResult* find(const std::string& scenario, const std::string& learner);
};

/// Runs every (scenario, learner, seed) combination with seeds 1..seeds on a
/// bounded worker pool (threads = 0 takes the hardware count, capped by the
/// DRIFTBENCH_THREADS environment variable).  Failures are collected and the
/// remaining runs continue.  `trace_sink`, when set, receives every finished
/// trace (serialized by a lock, in no particular order).
ExperimentResult run_experiment(const std::vector<Scenario>& scenarios,
                                const std::vector<LearnerConfig>& learners,
                                int seeds = 10, long window = 500, int threads = 0,
                                const std::function<void(const RunTrace&)>& trace_sink = {});

}  // namespace driftbench
