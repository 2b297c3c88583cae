#include "driftbench/adwin.hpp"

#include <cmath>
#include <stdexcept>

namespace driftbench {

Adwin::Adwin(double delta) : delta_(delta) {
    if (!(delta_ > 0.0 && delta_ < 1.0)) {
        throw std::invalid_argument("adwin delta must be in (0,1)");
    }
    rows_.emplace_back();
}

void Adwin::clear() {
    rows_.clear();
    rows_.emplace_back();
    width_ = 0;
    sum_ = 0.0;
    var_sum_ = 0.0;
}

bool Adwin::update(double value) {
    insert(value);
    compress();
    if (width_ <= kMinWindow) return false;
    return shrink_while_cut();
}

void Adwin::insert(double value) {
    if (width_ > 0) {
        const double mean_before = sum_ / static_cast<double>(width_);
        var_sum_ += static_cast<double>(width_) * (value - mean_before) *
                    (value - mean_before) / static_cast<double>(width_ + 1);
    }
    ++width_;
    sum_ += value;
    rows_[0].push_back({value, 0.0});
}

void Adwin::compress() {
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (static_cast<int>(rows_[r].size()) <= kMaxBucketsPerRow) break;
        if (r + 1 == rows_.size()) rows_.emplace_back();
        // Merge the two oldest buckets of this row into the next row.
        const double n = std::ldexp(1.0, static_cast<int>(r));  // 2^r
        Bucket a = rows_[r].front();
        rows_[r].pop_front();
        Bucket b = rows_[r].front();
        rows_[r].pop_front();
        const double ua = a.sum / n;
        const double ub = b.sum / n;
        Bucket merged;
        merged.sum = a.sum + b.sum;
        merged.variance = a.variance + b.variance + n * n * (ua - ub) * (ua - ub) / (n + n);
        rows_[r + 1].push_back(merged);
    }
}

bool Adwin::cut_found() const {
    const double n = static_cast<double>(width_);
    const double variance = var_sum_ / n;
    const double delta_dash = std::log(2.0 * std::log(n) / delta_);

    double n0 = 0.0;
    double sum0 = 0.0;
    // Walk bucket boundaries from the oldest end.
    for (size_t ri = rows_.size(); ri-- > 0;) {
        const double bucket_n = std::ldexp(1.0, static_cast<int>(ri));
        for (const auto& bucket : rows_[ri]) {
            n0 += bucket_n;
            sum0 += bucket.sum;
            const double n1 = n - n0;
            if (n1 < kMinSubWindow) return false;  // no boundaries left to test
            if (n0 < kMinSubWindow) continue;
            const double inv_m = 1.0 / (n0 - kMinSubWindow + 1.0) +
                                 1.0 / (n1 - kMinSubWindow + 1.0);
            const double epsilon = std::sqrt(2.0 * inv_m * variance * delta_dash) +
                                   2.0 / 3.0 * delta_dash * inv_m;
            const double diff = sum0 / n0 - (sum_ - sum0) / n1;
            if (std::fabs(diff) > epsilon) return true;
        }
    }
    return false;
}

void Adwin::drop_oldest_bucket() {
    size_t ri = rows_.size();
    while (ri-- > 0) {
        if (!rows_[ri].empty()) break;
    }
    auto& row = rows_[ri];
    const double n = std::ldexp(1.0, static_cast<int>(ri));
    const Bucket bucket = row.front();
    row.pop_front();
    if (row.empty() && ri + 1 == rows_.size() && ri > 0) rows_.pop_back();

    width_ -= static_cast<long>(n);
    sum_ -= bucket.sum;
    if (width_ > 0) {
        const double mean_after = sum_ / static_cast<double>(width_);
        const double u = bucket.sum / n;
        var_sum_ -= bucket.variance +
                    n * static_cast<double>(width_) * (u - mean_after) * (u - mean_after) /
                        (n + static_cast<double>(width_));
        if (var_sum_ < 0.0) var_sum_ = 0.0;
    } else {
        var_sum_ = 0.0;
    }
}

bool Adwin::shrink_while_cut() {
    bool changed = false;
    while (width_ > kMinWindow && cut_found()) {
        drop_oldest_bucket();
        changed = true;
    }
    return changed;
}

}  // namespace driftbench
