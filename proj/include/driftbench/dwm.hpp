#pragma once

#include <vector>

#include "driftbench/classifier.hpp"
#include "driftbench/naive_bayes.hpp"

namespace driftbench {

/// Dynamic weighted majority over naive Bayes experts.  Every `period`
/// steps, experts wrong on the current pattern are penalized by beta,
/// weights are normalized to max 1, experts below theta are pruned, and a
/// fresh expert is added when the weighted vote itself was wrong.  Every
/// expert trains on every pattern.
class Dwm : public Classifier {
public:
    explicit Dwm(double beta = 0.5, double theta = 0.01, int period = 25);

    int predict(const Eigen::VectorXd& x) const override;
    void train(const Eigen::VectorXd& x, int label) override;
    void reset(std::uint64_t seed) override;

    int expert_count() const { return static_cast<int>(experts_.size()); }
    double expert_weight(int i) const { return experts_.at(i).weight; }

private:
    struct Expert {
        NaiveBayes model;
        double weight = 1.0;
    };

    double beta_;
    double theta_;
    int period_;
    std::vector<Expert> experts_;
    long step_ = 0;
    int max_label_ = 0;

    int weighted_vote(const std::vector<int>& predictions) const;
};

}  // namespace driftbench
