#pragma once

#include <cstdint>
#include <deque>
#include <vector>

namespace driftbench {

/// Adaptive-window change detector over values in [0,1].  The window is an
/// exponential histogram (rows of buckets holding 2^row values, at most five
/// buckets per row).  On every update each bucket boundary is tested: if the
/// means of the two sub-windows differ by more than the variance-corrected
/// Hoeffding cut threshold at confidence delta, the oldest bucket is dropped
/// and the update reports a change.
class Adwin {
public:
    explicit Adwin(double delta = 0.002);

    /// Feeds one value; returns true when the window was cut.
    bool update(double value);

    double mean() const { return width_ > 0 ? sum_ / static_cast<double>(width_) : 0.0; }
    long width() const { return width_; }

    void clear();

private:
    struct Bucket {
        double sum = 0.0;
        double variance = 0.0;
    };

    double delta_;
    // rows_[r] holds buckets of 2^r values; within a row front() is oldest.
    std::vector<std::deque<Bucket>> rows_;
    long width_ = 0;
    double sum_ = 0.0;
    double var_sum_ = 0.0;

    void insert(double value);
    void compress();
    bool shrink_while_cut();
    bool cut_found() const;
    void drop_oldest_bucket();

    static constexpr int kMaxBucketsPerRow = 5;
    static constexpr long kMinSubWindow = 5;
    static constexpr long kMinWindow = 16;
};

}  // namespace driftbench
