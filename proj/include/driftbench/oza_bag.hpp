#pragma once

#include <vector>

#include "driftbench/adwin.hpp"
#include "driftbench/classifier.hpp"
#include "driftbench/hoeffding_tree.hpp"
#include "driftbench/rng.hpp"

namespace driftbench {

/// Online bagging over Hoeffding trees with per-member ADWIN drift monitors.
/// Each member trains on each pattern k ~ Poisson(1) times; its ADWIN is fed
/// the member's 0-1 error measured before it trains.  When one or more
/// ADWINs signal, the signaling member with the highest error estimate is
/// replaced by a fresh tree and detector.  Prediction is the majority vote.
class OzaBagAdwin : public Classifier {
public:
    explicit OzaBagAdwin(int ensemble_size = 10, double adwin_delta = 0.002,
                         HoeffdingTreeConfig base_config = {});

    int predict(const Eigen::VectorXd& x) const override;
    void train(const Eigen::VectorXd& x, int label) override;
    void reset(std::uint64_t seed) override;

    int ensemble_size() const { return static_cast<int>(members_.size()); }
    long reset_count() const { return resets_; }

private:
    struct Member {
        HoeffdingTree tree;
        Adwin detector;

        Member(const HoeffdingTreeConfig& cfg, double delta)
            : tree(cfg), detector(delta) {}
    };

    double adwin_delta_;
    HoeffdingTreeConfig base_config_;
    std::vector<Member> members_;
    Rng rng_;
    int max_label_ = 0;
    long resets_ = 0;
};

}  // namespace driftbench
