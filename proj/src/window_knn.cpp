#include "driftbench/window_knn.hpp"

#include <algorithm>
#include <stdexcept>

namespace driftbench {

WindowKnn::WindowKnn(int window_size, int k) : wsize_(window_size), k_(k) {
    if (wsize_ < 1) throw std::invalid_argument("window size must be >= 1");
    if (k_ < 1 || k_ > wsize_) throw std::invalid_argument("k must be in [1, wsize]");
}

int WindowKnn::stored() const {
    return static_cast<int>(std::min<long>(inserted_, wsize_));
}

int WindowKnn::predict(const Eigen::VectorXd& x) const {
    const int m = stored();
    if (m == 0) return 0;
    const int oldest = inserted_ <= wsize_ ? 0 : static_cast<int>(inserted_ % wsize_);

    auto sq_dist = [&](int slot) {
        const double* p = buffer_.data() + static_cast<size_t>(slot) * dim_;
        double acc = 0.0;
        for (int f = 0; f < dim_; ++f) {
            const double d = p[f] - x[f];
            acc += d * d;
        }
        return acc;
    };

    if (k_ == 1) {
        // Scan in insertion order; strict < keeps the oldest on exact ties.
        int best_slot = oldest;
        double best = sq_dist(oldest);
        for (int i = 1; i < m; ++i) {
            const int slot = (oldest + i) % wsize_;
            const double d = sq_dist(slot);
            if (d < best) {
                best = d;
                best_slot = slot;
            }
        }
        return labels_[best_slot];
    }

    const int k = std::min(k_, m);
    // Top-k kept sorted by distance; equal distances keep insertion order.
    std::vector<std::pair<double, int>> top;  // (distance, label)
    top.reserve(k + 1);
    for (int i = 0; i < m; ++i) {
        const int slot = (oldest + i) % wsize_;
        const double d = sq_dist(slot);
        if (static_cast<int>(top.size()) == k && d >= top.back().first) continue;
        auto pos = std::upper_bound(top.begin(), top.end(), d,
                                    [](double v, const auto& e) { return v < e.first; });
        top.insert(pos, {d, labels_[slot]});
        if (static_cast<int>(top.size()) > k) top.pop_back();
    }

    int max_label = 0;
    for (const auto& e : top) max_label = std::max(max_label, e.second);
    std::vector<int> votes(max_label + 1, 0);
    for (const auto& e : top) ++votes[e.second];
    const int top_votes = *std::max_element(votes.begin(), votes.end());
    for (const auto& e : top) {
        if (votes[e.second] == top_votes) return e.second;  // nearest tied label
    }
    return top.front().second;
}

void WindowKnn::train(const Eigen::VectorXd& x, int label) {
    if (dim_ == 0) {
        dim_ = static_cast<int>(x.size());
        buffer_.assign(static_cast<size_t>(wsize_) * dim_, 0.0);
        labels_.assign(wsize_, 0);
    }
    const int slot = static_cast<int>(inserted_ % wsize_);
    std::copy(x.data(), x.data() + dim_, buffer_.begin() + static_cast<size_t>(slot) * dim_);
    labels_[slot] = label;
    ++inserted_;
}

void WindowKnn::reset(std::uint64_t) {
    dim_ = 0;
    inserted_ = 0;
    buffer_.clear();
    labels_.clear();
}

}  // namespace driftbench
