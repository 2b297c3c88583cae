#include "driftbench/naive_bayes.hpp"

#include <cmath>
#include <stdexcept>

namespace driftbench {

int NaiveBayes::predict(const Eigen::VectorXd& x) const {
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < static_cast<int>(classes_.size()); ++c) {
        const auto& cls = classes_[c];
        if (cls.count == 0) continue;
        double score = std::log(static_cast<double>(cls.count) / static_cast<double>(total_));
        for (Eigen::Index f = 0; f < x.size(); ++f) {
            const auto& m = cls.features[f];
            const double var =
                std::max(m.m2 / static_cast<double>(cls.count), kVarianceFloor);
            const double diff = x[f] - m.mean;
            score += -0.5 * (std::log(2.0 * M_PI * var) + diff * diff / var);
        }
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

void NaiveBayes::train(const Eigen::VectorXd& x, int label) {
    if (label < 0) throw std::invalid_argument("labels must be >= 0");
    if (label >= static_cast<int>(classes_.size())) classes_.resize(label + 1);
    auto& cls = classes_[label];
    if (cls.features.empty()) cls.features.resize(x.size());
    ++cls.count;
    ++total_;
    const double n = static_cast<double>(cls.count);
    for (Eigen::Index f = 0; f < x.size(); ++f) {
        auto& m = cls.features[f];
        const double delta = x[f] - m.mean;
        m.mean += delta / n;
        m.m2 += delta * (x[f] - m.mean);
    }
}

void NaiveBayes::reset(std::uint64_t) {
    classes_.clear();
    total_ = 0;
}

}  // namespace driftbench
