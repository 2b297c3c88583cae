#include "driftbench/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "driftbench/errors.hpp"
#include "driftbench/rng.hpp"

namespace driftbench {

namespace {
constexpr std::uint64_t kLearnerSeedSalt = 0x6C6561726E6572ULL;  // decouples learner rng from the stream
}

double RunTrace::final_error() const {
    if (losses.empty()) return 0.0;
    const long sum = std::accumulate(losses.begin(), losses.end(), 0L);
    return static_cast<double>(sum) / static_cast<double>(losses.size());
}

RunTrace prequential_run(const Scenario& scenario, Classifier& model,
                         const std::string& learner_id, std::uint64_t seed) {
    RunTrace trace;
    trace.scenario = scenario.name();
    trace.learner = learner_id;
    trace.seed = seed;
    trace.losses.reserve(scenario.length());

    StreamGenerator stream(scenario, seed);
    while (auto pattern = stream.next()) {
        const int predicted = model.predict(pattern->x);
        trace.losses.push_back(predicted == pattern->class_index ? 0 : 1);
        model.train(pattern->x, pattern->class_index);
    }
    return trace;
}

RunTrace prequential_run(const Scenario& scenario, const LearnerConfig& learner,
                         std::uint64_t seed) {
    auto model = make_classifier(learner, scenario, splitmix64(seed ^ kLearnerSeedSalt));
    return prequential_run(scenario, *model, learner.id, seed);
}

double ae_cum(const RunTrace& trace, long n) {
    if (n < 1 || n > static_cast<long>(trace.losses.size())) {
        throw std::invalid_argument("ae_cum: n out of range");
    }
    const long sum = std::accumulate(trace.losses.begin(), trace.losses.begin() + n, 0L);
    return static_cast<double>(sum) / static_cast<double>(n);
}

double ae_win(const RunTrace& trace, long n, long w) {
    if (w < 1) throw std::invalid_argument("ae_win: window must be >= 1");
    if (n < w || n > static_cast<long>(trace.losses.size())) {
        throw std::invalid_argument("ae_win: need w <= n <= length");
    }
    const long sum =
        std::accumulate(trace.losses.begin() + (n - w), trace.losses.begin() + n, 0L);
    return static_cast<double>(sum) / static_cast<double>(w);
}

std::vector<MetricPoint> metric_series(const RunTrace& trace, long window) {
    if (window < 1) throw std::invalid_argument("metric_series: window must be >= 1");
    std::vector<MetricPoint> out;
    out.reserve(trace.losses.size());
    double cum = 0.0;
    long win_sum = 0;
    for (long i = 0; i < static_cast<long>(trace.losses.size()); ++i) {
        const long n = i + 1;
        const int loss = trace.losses[i];
        cum = (static_cast<double>(n - 1) * cum + loss) / static_cast<double>(n);
        win_sum += loss;
        if (n > window) win_sum -= trace.losses[i - window];
        MetricPoint p;
        p.n = n;
        p.loss = loss;
        p.ae_cum = cum;
        p.ae_win_valid = n >= window;
        p.ae_win = p.ae_win_valid ? static_cast<double>(win_sum) / static_cast<double>(window)
                                  : 0.0;
        out.push_back(p);
    }
    return out;
}

const CellResult* ExperimentResult::find(const std::string& scenario,
                                         const std::string& learner) const {
    for (const auto& cell : cells) {
        if (cell.scenario == scenario && cell.learner == learner) return &cell;
    }
    return nullptr;
}

CellResult* ExperimentResult::find(const std::string& scenario, const std::string& learner) {
    return const_cast<CellResult*>(
        static_cast<const ExperimentResult*>(this)->find(scenario, learner));
}

namespace {

int worker_count(int requested, size_t jobs) {
    int n = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("DRIFTBENCH_THREADS")) {
        const int limit = std::atoi(cap);
        if (limit >= 1) n = std::min(n, limit);
    }
    return static_cast<int>(std::min<size_t>(n, jobs));
}

}  // namespace

ExperimentResult run_experiment(const std::vector<Scenario>& scenarios,
                                const std::vector<LearnerConfig>& learners,
                                int seeds, long window, int threads,
                                const std::function<void(const RunTrace&)>& trace_sink) {
    if (scenarios.empty() || learners.empty() || seeds < 1) {
        throw std::invalid_argument("run_experiment: need scenarios, learners, seeds >= 1");
    }
    ExperimentResult result;
    result.seeds = seeds;
    result.window = window;
    for (const auto& s : scenarios) result.scenario_names.push_back(s.name());
    result.learners = learners;

    const size_t n_cells = scenarios.size() * learners.size();
    const size_t n_runs = n_cells * static_cast<size_t>(seeds);
    result.cells.resize(n_cells);

    struct RunSlot {
        double final_error = 0.0;
        std::vector<double> curve;
        bool failed = false;
        std::string message;
    };
    std::vector<RunSlot> slots(n_runs);

    std::atomic<size_t> next_job{0};
    std::mutex sink_mutex;

    auto worker = [&] {
        for (;;) {
            const size_t job = next_job.fetch_add(1);
            if (job >= n_runs) return;
            const size_t cell = job / seeds;
            const int seed_idx = static_cast<int>(job % seeds);
            const auto& scenario = scenarios[cell / learners.size()];
            const auto& learner = learners[cell % learners.size()];
            RunSlot& slot = slots[job];
            try {
                const RunTrace trace =
                    prequential_run(scenario, learner, static_cast<std::uint64_t>(seed_idx + 1));
                slot.final_error = trace.final_error();
                if (window >= 1 && static_cast<long>(trace.losses.size()) >= window) {
                    const auto series = metric_series(trace, window);
                    slot.curve.reserve(series.size() - window + 1);
                    for (const auto& p : series) {
                        if (p.ae_win_valid) slot.curve.push_back(p.ae_win);
                    }
                }
                if (trace_sink) {
                    std::lock_guard<std::mutex> lock(sink_mutex);
                    trace_sink(trace);
                }
            } catch (const std::exception& e) {
                slot.failed = true;
                slot.message = e.what();
            }
        }
    };

    const int n_workers = worker_count(threads, n_runs);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction in (scenario, learner, seed) order.
    for (size_t cell = 0; cell < n_cells; ++cell) {
        CellResult& out = result.cells[cell];
        out.scenario = scenarios[cell / learners.size()].name();
        out.learner = learners[cell % learners.size()].id;
        double sum = 0.0;
        for (int s = 0; s < seeds; ++s) {
            const RunSlot& slot = slots[cell * seeds + s];
            if (slot.failed) {
                result.failures.push_back(RunFailure{out.scenario, out.learner,
                                                     static_cast<std::uint64_t>(s + 1),
                                                     slot.message});
                continue;
            }
            out.seed_finals.push_back(slot.final_error);
            sum += slot.final_error;
            if (out.mean_ae_win.empty()) {
                out.mean_ae_win = slot.curve;
            } else if (out.mean_ae_win.size() == slot.curve.size()) {
                for (size_t i = 0; i < slot.curve.size(); ++i) {
                    out.mean_ae_win[i] += slot.curve[i];
                }
            }
        }
        if (!out.seed_finals.empty()) {
            out.mean_final = sum / static_cast<double>(out.seed_finals.size());
            for (auto& v : out.mean_ae_win) {
                v /= static_cast<double>(out.seed_finals.size());
            }
        }
    }
    return result;
}

}  // namespace driftbench
