#include "driftbench/oza_bag.hpp"

#include <algorithm>
#include <stdexcept>

namespace driftbench {

OzaBagAdwin::OzaBagAdwin(int ensemble_size, double adwin_delta,
                         HoeffdingTreeConfig base_config)
    : adwin_delta_(adwin_delta), base_config_(base_config), rng_(0) {
    if (ensemble_size < 1) throw std::invalid_argument("ensemble size must be >= 1");
    members_.reserve(ensemble_size);
    for (int i = 0; i < ensemble_size; ++i) members_.emplace_back(base_config_, adwin_delta_);
}

int OzaBagAdwin::predict(const Eigen::VectorXd& x) const {
    std::vector<int> votes(max_label_ + 1, 0);
    for (const auto& m : members_) {
        const int p = m.tree.predict(x);
        if (p >= static_cast<int>(votes.size())) votes.resize(p + 1, 0);
        ++votes[p];
    }
    int best = 0;
    for (int c = 1; c < static_cast<int>(votes.size()); ++c) {
        if (votes[c] > votes[best]) best = c;
    }
    return best;
}

void OzaBagAdwin::train(const Eigen::VectorXd& x, int label) {
    max_label_ = std::max(max_label_, label);
    int worst_signaling = -1;
    double worst_estimate = -1.0;
    for (size_t i = 0; i < members_.size(); ++i) {
        auto& m = members_[i];
        const double err = m.tree.predict(x) == label ? 0.0 : 1.0;
        const int k = rng_.poisson(1.0);
        for (int j = 0; j < k; ++j) m.tree.train(x, label);
        const double estimate_before = m.detector.mean();
        // Only cuts that raised the error estimate count as drift; cuts on
        // improving error are the detector tracking convergence.
        if (m.detector.update(err) && m.detector.mean() > estimate_before &&
            m.detector.mean() > worst_estimate) {
            worst_estimate = m.detector.mean();
            worst_signaling = static_cast<int>(i);
        }
    }
    if (worst_signaling >= 0) {
        members_[worst_signaling].tree.reset(0);
        members_[worst_signaling].detector.clear();
        ++resets_;
    }
}

void OzaBagAdwin::reset(std::uint64_t seed) {
    for (auto& m : members_) {
        m.tree.reset(0);
        m.detector.clear();
    }
    rng_ = Rng(seed);
    max_label_ = 0;
    resets_ = 0;
}

}  // namespace driftbench
