#pragma once

#include <span>
#include <string>
#include <vector>

#include "driftbench/evaluation.hpp"

namespace driftbench {

/// Exact two-sided Wilcoxon signed-rank p-value for paired samples
/// (2 <= n <= 25).  Zero differences are dropped, tied |differences| get
/// midranks, and the p-value is 2*min(P(W+ <= w), P(W+ >= w)) capped at 1
/// under the exact null distribution over all sign assignments.  All-zero
/// differences give p = 1.
double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Exact two-sided Mann-Whitney rank-sum p-value (unpaired variant).
double rank_sum_exact(std::span<const double> a, std::span<const double> b);

struct SignificanceGroup {
    std::string scenario;
    std::string best;                  // lowest mean final error
    std::vector<std::string> members;  // learners not significantly worse
};

/// Per scenario, the set of learners statistically tied with the best by the
/// paired exact Wilcoxon test at level alpha (unpaired uses the rank-sum
/// test).  The Bayes oracle is excluded from the comparison; a single
/// eligible learner is trivially its own group.  Also sets in_best_group on
/// the result's cells.  Needs >= 2 seeds.
std::vector<SignificanceGroup> significance_groups(ExperimentResult& result,
                                                   double alpha = 0.05,
                                                   bool paired = true);

struct PairwisePValue {
    std::string learner_a;
    std::string learner_b;
    double p_value = 1.0;
};

std::vector<PairwisePValue> pairwise_pvalues(const ExperimentResult& result,
                                             const std::string& scenario,
                                             bool paired = true);

}  // namespace driftbench
