#include "driftbench/sgd_linear.hpp"

#include <stdexcept>

#include "driftbench/errors.hpp"

namespace driftbench {

SgdLinear::SgdLinear(double learning_rate, double regularization)
    : eta_(learning_rate), lambda_(regularization) {
    if (!(eta_ > 0.0)) throw std::invalid_argument("learning rate must be > 0");
    if (lambda_ < 0.0) throw std::invalid_argument("regularization must be >= 0");
}

int SgdLinear::predict(const Eigen::VectorXd& x) const {
    if (label_count_ == 0) return 0;
    if (label_count_ == 1 || w_.size() == 0) return labels_[0];
    const double score = w_.dot(x) + b_;
    return score > 0.0 ? labels_[1] : labels_[0];
}

void SgdLinear::train(const Eigen::VectorXd& x, int label) {
    int side = -1;
    for (int i = 0; i < label_count_; ++i) {
        if (labels_[i] == label) side = i;
    }
    if (side < 0) {
        if (label_count_ == 2) {
            throw UnsupportedConfigurationError(
                "sgd_linear supports exactly two classes; saw a third label");
        }
        labels_[label_count_] = label;
        side = label_count_++;
    }
    if (w_.size() == 0) w_ = Eigen::VectorXd::Zero(x.size());
    const double y = side == 0 ? -1.0 : 1.0;
    const double margin = y * (w_.dot(x) + b_);
    w_ *= 1.0 - eta_ * lambda_;
    if (margin < 1.0) {
        w_ += eta_ * y * x;
        b_ += eta_ * y;
    }
}

void SgdLinear::reset(std::uint64_t) {
    w_.resize(0);
    b_ = 0.0;
    labels_ = {-1, -1};
    label_count_ = 0;
}

}  // namespace driftbench
