#pragma once

#include <vector>

#include "driftbench/classifier.hpp"

namespace driftbench {

/// Incremental Gaussian naive Bayes: per-class counts plus one-pass
/// mean/variance per (class, feature).  Before any training it answers
/// class 0.
class NaiveBayes : public Classifier {
public:
    NaiveBayes() = default;

    int predict(const Eigen::VectorXd& x) const override;
    void train(const Eigen::VectorXd& x, int label) override;
    void reset(std::uint64_t seed) override;

private:
    struct Moments {
        double mean = 0.0;
        double m2 = 0.0;
    };
    struct ClassStats {
        long count = 0;
        std::vector<Moments> features;
    };
    std::vector<ClassStats> classes_;
    long total_ = 0;

    static constexpr double kVarianceFloor = 1e-9;
};

}  // namespace driftbench
