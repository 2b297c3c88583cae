#pragma once

#include "driftbench/classifier.hpp"
#include "driftbench/drift_model.hpp"

namespace driftbench {

/// Bayes-optimal reference classifier: argmax of the scenario's ground-truth
/// posterior.  It tracks the stream position through its train calls, so it
/// must see patterns in stream order — exactly the prequential discipline.
class BayesOracle : public Classifier {
public:
    explicit BayesOracle(const Scenario& scenario) : scenario_(&scenario) {}

    int predict(const Eigen::VectorXd& x) const override {
        const long t = std::min(t_, scenario_->length() - 1);
        return scenario_->bayes_classify(t, x);
    }

    void train(const Eigen::VectorXd&, int) override { ++t_; }

    void reset(std::uint64_t) override { t_ = 0; }

private:
    const Scenario* scenario_;
    long t_ = 0;
};

}  // namespace driftbench
