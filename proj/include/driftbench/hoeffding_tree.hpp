#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "driftbench/classifier.hpp"

namespace driftbench {

struct HoeffdingTreeConfig {
    long grace_period = 200;
    double split_confidence = 1e-7;  // delta for the Hoeffding bound
    double tie_threshold = 0.05;
    int max_depth = 20;
    int split_candidates = 10;  // thresholds probed per feature
    bool nb_leaves = false;     // naive Bayes prediction at leaves
};

/// Incremental decision tree for numeric features.  Leaves keep per-class
/// Gaussian summaries per feature; after a grace period a leaf splits when
/// the information-gain lead of the best candidate over the second best
/// clears the Hoeffding bound eps = sqrt(R^2 ln(1/delta) / 2n), or when eps
/// falls below the tie threshold.
class HoeffdingTree : public Classifier {
public:
    explicit HoeffdingTree(HoeffdingTreeConfig config = {});
    HoeffdingTree(const HoeffdingTree&) = delete;
    HoeffdingTree& operator=(const HoeffdingTree&) = delete;
    HoeffdingTree(HoeffdingTree&&) = default;
    HoeffdingTree& operator=(HoeffdingTree&&) = default;

    int predict(const Eigen::VectorXd& x) const override;
    void train(const Eigen::VectorXd& x, int label) override;
    void reset(std::uint64_t seed) override;

    int depth() const;
    long split_count() const { return splits_; }
    /// Root split (feature, threshold), once the root is no longer a leaf.
    std::optional<std::pair<int, double>> root_split() const;

private:
    struct FeatureMoments {
        long n = 0;
        double mean = 0.0;
        double m2 = 0.0;
        double min = 0.0;
        double max = 0.0;

        void add(double v);
        double variance() const;
        /// Estimated fraction of this class's mass at or below `threshold`.
        double fraction_below(double threshold) const;
    };

    struct Node {
        bool leaf = true;
        int depth = 0;
        // split node
        int feature = -1;
        double threshold = 0.0;
        std::unique_ptr<Node> left;   // x[feature] <= threshold
        std::unique_ptr<Node> right;
        // leaf state
        std::vector<double> class_counts;
        std::vector<std::vector<FeatureMoments>> moments;  // [class][feature]
        double seen_since_attempt = 0.0;
    };

    HoeffdingTreeConfig config_;
    std::unique_ptr<Node> root_;
    long splits_ = 0;

    Node* route(const Eigen::VectorXd& x) const;
    void try_split(Node& node);
    int leaf_majority(const Node& node) const;
    int leaf_naive_bayes(const Node& node, const Eigen::VectorXd& x) const;

    static double entropy(const std::vector<double>& counts, double total);
};

}  // namespace driftbench
