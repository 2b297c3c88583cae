#include "driftbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace driftbench {

namespace {

/// Midranks scaled by 2 so tied ranks stay integral.
std::vector<long> scaled_midranks(const std::vector<double>& values) {
    const size_t n = values.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return values[i] < values[j]; });
    std::vector<long> ranks(n, 0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i+1..j+1 (1-based); midrank*2 = (i+1) + (j+1)
        const long scaled = static_cast<long>(i + 1 + j + 1);
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = scaled;
        i = j + 1;
    }
    return ranks;
}

double two_sided_from_counts(const std::vector<double>& ways, long observed, double total) {
    double below = 0.0;
    double above = 0.0;
    for (long s = 0; s < static_cast<long>(ways.size()); ++s) {
        if (s <= observed) below += ways[s];
        if (s >= observed) above += ways[s];
    }
    return std::min(1.0, 2.0 * std::min(below, above) / total);
}

}  // namespace

double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("wilcoxon_signed_rank: length mismatch");
    }
    if (a.size() < 2 || a.size() > 25) {
        throw std::invalid_argument("wilcoxon_signed_rank: need 2 <= n <= 25");
    }
    std::vector<double> abs_diffs;
    std::vector<bool> positive;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d == 0.0) continue;
        abs_diffs.push_back(std::fabs(d));
        positive.push_back(d > 0.0);
    }
    if (abs_diffs.empty()) return 1.0;

    const auto ranks = scaled_midranks(abs_diffs);
    long w_plus = 0;
    long rank_total = 0;
    for (size_t i = 0; i < ranks.size(); ++i) {
        rank_total += ranks[i];
        if (positive[i]) w_plus += ranks[i];
    }

    // Exact null distribution of W+ over all 2^n sign assignments.
    std::vector<double> ways(rank_total + 1, 0.0);
    ways[0] = 1.0;
    for (const long r : ranks) {
        for (long s = rank_total; s >= r; --s) ways[s] += ways[s - r];
    }
    return two_sided_from_counts(ways, w_plus, std::ldexp(1.0, static_cast<int>(ranks.size())));
}

double rank_sum_exact(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2 || a.size() + b.size() > 30) {
        throw std::invalid_argument("rank_sum_exact: need sizes >= 2, total <= 30");
    }
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = scaled_midranks(pooled);
    const size_t na = a.size();
    long ra = 0;
    long total = 0;
    for (size_t i = 0; i < ranks.size(); ++i) {
        total += ranks[i];
        if (i < na) ra += ranks[i];
    }

    // count[k][s]: subsets of size k with scaled rank sum s.
    std::vector<std::vector<double>> count(na + 1, std::vector<double>(total + 1, 0.0));
    count[0][0] = 1.0;
    for (const long r : ranks) {
        for (size_t k = na; k >= 1; --k) {
            for (long s = total; s >= r; --s) {
                count[k][s] += count[k - 1][s - r];
            }
        }
    }
    double n_subsets = 0.0;
    for (long s = 0; s <= total; ++s) n_subsets += count[na][s];
    return two_sided_from_counts(count[na], ra, n_subsets);
}

std::vector<SignificanceGroup> significance_groups(ExperimentResult& result, double alpha,
                                                   bool paired) {
    if (result.seeds < 2) {
        throw std::invalid_argument("significance_groups: need >= 2 seeds");
    }
    std::vector<std::string> eligible;
    for (const auto& cfg : result.learners) {
        if (cfg.kind != "bayes_optimal") eligible.push_back(cfg.id);
    }
    if (eligible.empty()) {
        throw std::invalid_argument("significance_groups: no non-oracle learners");
    }

    std::vector<SignificanceGroup> groups;
    for (const auto& scenario : result.scenario_names) {
        SignificanceGroup group;
        group.scenario = scenario;
        const CellResult* best = nullptr;
        for (const auto& id : eligible) {
            const CellResult* cell = result.find(scenario, id);
            if (!cell || cell->seed_finals.size() < 2) continue;
            if (!best || cell->mean_final < best->mean_final) best = cell;
        }
        if (!best) continue;
        group.best = best->learner;
        for (const auto& id : eligible) {
            CellResult* cell = result.find(scenario, id);
            if (!cell || cell->seed_finals.size() < 2) continue;
            const double p =
                cell == best ? 1.0
                             : (paired ? wilcoxon_signed_rank(best->seed_finals, cell->seed_finals)
                                       : rank_sum_exact(best->seed_finals, cell->seed_finals));
            if (p >= alpha) {
                group.members.push_back(id);
                cell->in_best_group = true;
            }
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

std::vector<PairwisePValue> pairwise_pvalues(const ExperimentResult& result,
                                             const std::string& scenario, bool paired) {
    std::vector<const CellResult*> cells;
    for (const auto& cfg : result.learners) {
        if (cfg.kind == "bayes_optimal") continue;
        const CellResult* cell = result.find(scenario, cfg.id);
        if (cell && cell->seed_finals.size() >= 2) cells.push_back(cell);
    }
    std::vector<PairwisePValue> out;
    for (size_t i = 0; i < cells.size(); ++i) {
        for (size_t j = i + 1; j < cells.size(); ++j) {
            const double p = paired
                                 ? wilcoxon_signed_rank(cells[i]->seed_finals, cells[j]->seed_finals)
                                 : rank_sum_exact(cells[i]->seed_finals, cells[j]->seed_finals);
            out.push_back({cells[i]->learner, cells[j]->learner, p});
        }
    }
    return out;
}

}  // namespace driftbench
