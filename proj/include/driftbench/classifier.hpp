#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace driftbench {

class Scenario;

/// Predict-then-train contract every learner implements.  predict is const
/// and must not affect later predictions; train handles one pattern in
/// bounded amortized time and memory for fixed hyperparameters.  Labels are
/// dense class indices starting at 0.
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual int predict(const Eigen::VectorXd& x) const = 0;
    virtual void train(const Eigen::VectorXd& x, int label) = 0;

    /// Returns to the initial state; `seed` drives any internal randomness.
    virtual void reset(std::uint64_t seed) = 0;
};

/// Learner kind plus flat hyperparameters, as written in config files
/// (e.g. kind=window_knn, wsize=100).
struct LearnerConfig {
    std::string id;    // column label, e.g. "nn100"
    std::string kind;  // naive_bayes | sgd_linear | window_knn | dwm |
                       // ozabag_adwin | bayes_optimal
    std::map<std::string, double> params;

    double param(const std::string& key, double fallback) const {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

/// The benchmark's reference configurations, in reporting order:
/// opt, nb, sgd, dwm, ozab, nn100, nn1500, nn6000.
const std::vector<LearnerConfig>& builtin_learners();

/// Builtin learner id, or a path to a learner config file.
LearnerConfig resolve_learner(const std::string& id_or_path);

/// Constructs a freshly reset learner.  `scenario` is consulted only by the
/// bayes_optimal kind.  Throws std::invalid_argument on an unknown kind or
/// bad hyperparameters.
std::unique_ptr<Classifier> make_classifier(const LearnerConfig& config,
                                            const Scenario& scenario,
                                            std::uint64_t seed);

}  // namespace driftbench
