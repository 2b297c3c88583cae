#pragma once

#include <string>
#include <vector>

#include "driftbench/drift_model.hpp"

namespace driftbench {

struct CatalogEntry {
    std::string name;
    Scenario scenario;
    /// Reference Bayes-optimal final prequential error, in percent.  Used by
    /// verification only, never by learners.
    double optimal_error_pct = 0.0;
};

/// The nine canonical benchmark scenarios, in reporting order.
const std::vector<std::string>& catalog_names();

bool is_catalog_name(const std::string& name);

/// Builds one canonical scenario.  Throws UnknownScenarioError.
CatalogEntry build_catalog_entry(const std::string& name);

/// Catalog name, or a path to a scenario config file.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace driftbench
