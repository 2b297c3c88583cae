#include "driftbench/classifier.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "driftbench/bayes_oracle.hpp"
#include "driftbench/dwm.hpp"
#include "driftbench/errors.hpp"
#include "driftbench/hoeffding_tree.hpp"
#include "driftbench/naive_bayes.hpp"
#include "driftbench/oza_bag.hpp"
#include "driftbench/sgd_linear.hpp"
#include "driftbench/window_knn.hpp"

namespace driftbench {

namespace {

int int_param(const LearnerConfig& cfg, const std::string& key, int fallback) {
    return static_cast<int>(std::lround(cfg.param(key, fallback)));
}

HoeffdingTreeConfig tree_config(const LearnerConfig& cfg) {
    HoeffdingTreeConfig tc;
    tc.grace_period = int_param(cfg, "grace", static_cast<int>(tc.grace_period));
    tc.split_confidence = cfg.param("delta_split", tc.split_confidence);
    tc.tie_threshold = cfg.param("tie", tc.tie_threshold);
    tc.max_depth = int_param(cfg, "max_depth", tc.max_depth);
    tc.nb_leaves = cfg.param("nb_leaves", 0.0) != 0.0;
    return tc;
}

}  // namespace

const std::vector<LearnerConfig>& builtin_learners() {
    static const std::vector<LearnerConfig> learners = {
        {"opt", "bayes_optimal", {}},
        {"nb", "naive_bayes", {}},
        {"sgd", "sgd_linear", {}},
        {"dwm", "dwm", {}},
        {"ozab", "ozabag_adwin", {}},
        {"nn100", "window_knn", {{"wsize", 100}}},
        {"nn1500", "window_knn", {{"wsize", 1500}}},
        {"nn6000", "window_knn", {{"wsize", 6000}}},
    };
    return learners;
}

LearnerConfig resolve_learner(const std::string& id_or_path) {
    for (const auto& cfg : builtin_learners()) {
        if (cfg.id == id_or_path) return cfg;
    }
    if (!std::filesystem::exists(id_or_path)) {
        throw std::invalid_argument("'" + id_or_path +
                                    "' is neither a builtin learner id nor a readable file");
    }
    std::ifstream in(id_or_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioParseError("'" + id_or_path + "': " + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw ScenarioParseError("'" + id_or_path + "': missing field 'kind'");
    }
    LearnerConfig cfg;
    cfg.kind = j.at("kind").get<std::string>();
    cfg.id = j.contains("id") && j.at("id").is_string()
                 ? j.at("id").get<std::string>()
                 : std::filesystem::path(id_or_path).stem().string();
    for (const auto& [key, value] : j.items()) {
        if (key == "kind" || key == "id") continue;
        if (!value.is_number()) {
            throw ScenarioParseError("'" + id_or_path + "': hyperparameter '" + key +
                                     "' must be a number");
        }
        cfg.params[key] = value.get<double>();
    }
    return cfg;
}

std::unique_ptr<Classifier> make_classifier(const LearnerConfig& config,
                                            const Scenario& scenario,
                                            std::uint64_t seed) {
    std::unique_ptr<Classifier> out;
    if (config.kind == "naive_bayes") {
        out = std::make_unique<NaiveBayes>();
    } else if (config.kind == "sgd_linear") {
        out = std::make_unique<SgdLinear>(config.param("eta", 0.01),
                                          config.param("lambda", 1e-4));
    } else if (config.kind == "window_knn") {
        out = std::make_unique<WindowKnn>(int_param(config, "wsize", 100),
                                          int_param(config, "k", 1));
    } else if (config.kind == "dwm") {
        out = std::make_unique<Dwm>(config.param("beta", 0.5), config.param("theta", 0.01),
                                    int_param(config, "period", 25));
    } else if (config.kind == "ozabag_adwin") {
        // Bagged trees classify through their leaf Gaussians; majority-only
        // leaves leave freshly reset members cold for a whole grace period.
        HoeffdingTreeConfig base = tree_config(config);
        base.nb_leaves = config.param("nb_leaves", 1.0) != 0.0;
        out = std::make_unique<OzaBagAdwin>(int_param(config, "ensemble", 10),
                                            config.param("delta", 0.002), base);
    } else if (config.kind == "hoeffding_tree") {
        out = std::make_unique<HoeffdingTree>(tree_config(config));
    } else if (config.kind == "bayes_optimal") {
        out = std::make_unique<BayesOracle>(scenario);
    } else {
        throw std::invalid_argument("unknown learner kind '" + config.kind + "'");
    }
    out->reset(seed);
    return out;
}

}  // namespace driftbench
