#pragma once

#include <vector>

#include "driftbench/classifier.hpp"

namespace driftbench {

/// k-nearest-neighbor classifier over a fixed-size sliding window of the
/// most recent training patterns (Euclidean distance, majority vote, vote
/// ties broken by the nearest neighbor among the tied labels).
class WindowKnn : public Classifier {
public:
    explicit WindowKnn(int window_size, int k = 1);

    int predict(const Eigen::VectorXd& x) const override;
    void train(const Eigen::VectorXd& x, int label) override;
    void reset(std::uint64_t seed) override;

    int stored() const;

private:
    int wsize_;
    int k_;
    int dim_ = 0;
    long inserted_ = 0;
    std::vector<double> buffer_;  // ring of wsize_*dim_ coordinates
    std::vector<int> labels_;     // ring of wsize_ labels
};

}  // namespace driftbench
