#pragma once

#include <array>

#include "driftbench/classifier.hpp"

namespace driftbench {

/// Two-class linear classifier trained by stochastic gradient descent on the
/// hinge loss with L2 shrinkage.  Observed labels map to -1/+1 in order of
/// first appearance; a third distinct label raises
/// UnsupportedConfigurationError.
class SgdLinear : public Classifier {
public:
    explicit SgdLinear(double learning_rate = 0.01, double regularization = 1e-4);

    int predict(const Eigen::VectorXd& x) const override;
    void train(const Eigen::VectorXd& x, int label) override;
    void reset(std::uint64_t seed) override;

    const Eigen::VectorXd& weights() const { return w_; }
    double bias() const { return b_; }

private:
    double eta_;
    double lambda_;
    Eigen::VectorXd w_;
    double b_ = 0.0;
    std::array<int, 2> labels_{-1, -1};
    int label_count_ = 0;
};

}  // namespace driftbench
