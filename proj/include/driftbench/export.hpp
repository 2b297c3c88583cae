#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "driftbench/drift_model.hpp"
#include "driftbench/evaluation.hpp"
#include "driftbench/stats.hpp"

namespace driftbench {

/// Write-then-rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Shortest-form float with 9 significant digits.
std::string format_value(double v);

/// CSV dataset: header `t,x1,...,xd,class,component`, one row per pattern in
/// time order; the component column is `<class_index>:<component_index>`.
std::string render_pattern_csv(const Scenario& scenario, std::uint64_t seed);

/// ARFF dataset: numeric attributes x1..xd plus the nominal class, relation
/// named after the scenario.
std::string render_pattern_arff(const Scenario& scenario, std::uint64_t seed);

/// Per-run trace CSV: header `n,loss,ae_cum,ae_win` (ae_win blank while
/// n < window).
std::string render_trace_csv(const RunTrace& trace, long window);

/// Per-scenario curve CSV: header `n,<learner1>,...`, rows of seed-averaged
/// windowed error for n = window..length.
std::string render_curves_csv(const ExperimentResult& result, const std::string& scenario);

/// Results table CSV mirroring the reporting layout: rows = scenarios,
/// columns = learners, values = mean final error in percent; members of the
/// per-scenario best group carry a `*` suffix.
std::string render_results_csv(const ExperimentResult& result, bool with_group_flags);

/// Per-seed final errors: `scenario,learner,seed,final_ae`.
std::string render_finals_csv(const ExperimentResult& result);

/// Rebuilds the per-seed finals (and learner order) written by
/// render_finals_csv; used by the compare/report commands.
ExperimentResult load_finals_csv(const std::filesystem::path& path);

std::string render_groups_csv(const std::vector<SignificanceGroup>& groups);
std::string render_pvalues_csv(const ExperimentResult& result, bool paired);

/// Plain-text report: aligned results table plus group summaries.
std::string render_report_text(const ExperimentResult& result,
                               const std::vector<SignificanceGroup>& groups);

}  // namespace driftbench
