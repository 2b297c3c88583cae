#include "driftbench/dwm.hpp"

#include <algorithm>
#include <stdexcept>

namespace driftbench {

Dwm::Dwm(double beta, double theta, int period)
    : beta_(beta), theta_(theta), period_(period) {
    if (!(beta_ > 0.0 && beta_ < 1.0)) throw std::invalid_argument("beta must be in (0,1)");
    if (!(theta_ >= 0.0)) throw std::invalid_argument("theta must be >= 0");
    if (period_ < 1) throw std::invalid_argument("period must be >= 1");
    experts_.push_back({});
}

int Dwm::weighted_vote(const std::vector<int>& predictions) const {
    std::vector<double> votes(max_label_ + 1, 0.0);
    for (size_t i = 0; i < experts_.size(); ++i) {
        votes[predictions[i]] += experts_[i].weight;
    }
    int best = 0;
    for (int c = 1; c < static_cast<int>(votes.size()); ++c) {
        if (votes[c] > votes[best]) best = c;
    }
    return best;
}

int Dwm::predict(const Eigen::VectorXd& x) const {
    std::vector<int> preds(experts_.size());
    for (size_t i = 0; i < experts_.size(); ++i) preds[i] = experts_[i].model.predict(x);
    return weighted_vote(preds);
}

void Dwm::train(const Eigen::VectorXd& x, int label) {
    max_label_ = std::max(max_label_, label);
    ++step_;
    const bool update_step = step_ % period_ == 0;

    std::vector<int> preds(experts_.size());
    for (size_t i = 0; i < experts_.size(); ++i) {
        preds[i] = experts_[i].model.predict(x);
        if (update_step && preds[i] != label) experts_[i].weight *= beta_;
    }
    const int global = weighted_vote(preds);

    if (update_step) {
        double top = 0.0;
        for (const auto& e : experts_) top = std::max(top, e.weight);
        if (top > 0.0) {
            for (auto& e : experts_) e.weight /= top;
        }
        std::erase_if(experts_, [&](const Expert& e) { return e.weight < theta_; });
        if (global != label || experts_.empty()) experts_.push_back({});
    }

    for (auto& e : experts_) e.model.train(x, label);
}

void Dwm::reset(std::uint64_t) {
    experts_.clear();
    experts_.push_back({});
    step_ = 0;
    max_label_ = 0;
}

}  // namespace driftbench
