#include "driftbench/hoeffding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace driftbench {

namespace {
constexpr double kVarianceFloor = 1e-9;

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }
}  // namespace

void HoeffdingTree::FeatureMoments::add(double v) {
    if (n == 0) {
        min = v;
        max = v;
    } else {
        min = std::min(min, v);
        max = std::max(max, v);
    }
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
}

double HoeffdingTree::FeatureMoments::variance() const {
    if (n == 0) return kVarianceFloor;
    return std::max(m2 / static_cast<double>(n), kVarianceFloor);
}

double HoeffdingTree::FeatureMoments::fraction_below(double threshold) const {
    if (n == 0) return 0.0;
    if (threshold < min) return 0.0;
    if (threshold >= max) return 1.0;
    const double sd = std::sqrt(variance());
    return std::clamp(normal_cdf((threshold - mean) / sd), 0.0, 1.0);
}

HoeffdingTree::HoeffdingTree(HoeffdingTreeConfig config) : config_(config) {
    if (config_.grace_period < 1) throw std::invalid_argument("grace period must be >= 1");
    if (!(config_.split_confidence > 0.0 && config_.split_confidence < 1.0)) {
        throw std::invalid_argument("split confidence must be in (0,1)");
    }
    if (config_.max_depth < 1) throw std::invalid_argument("max depth must be >= 1");
    if (config_.split_candidates < 1) throw std::invalid_argument("need >= 1 split candidate");
    root_ = std::make_unique<Node>();
}

HoeffdingTree::Node* HoeffdingTree::route(const Eigen::VectorXd& x) const {
    Node* node = root_.get();
    while (!node->leaf) {
        node = x[node->feature] <= node->threshold ? node->left.get() : node->right.get();
    }
    return node;
}

double HoeffdingTree::entropy(const std::vector<double>& counts, double total) {
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double c : counts) {
        if (c > 0.0) {
            const double p = c / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

int HoeffdingTree::leaf_majority(const Node& node) const {
    int best = 0;
    double best_count = -1.0;
    for (int c = 0; c < static_cast<int>(node.class_counts.size()); ++c) {
        if (node.class_counts[c] > best_count) {
            best_count = node.class_counts[c];
            best = c;
        }
    }
    return best;
}

int HoeffdingTree::leaf_naive_bayes(const Node& node, const Eigen::VectorXd& x) const {
    double total = 0.0;
    for (double c : node.class_counts) total += c;
    if (total <= 0.0 || node.moments.empty()) return leaf_majority(node);
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < static_cast<int>(node.class_counts.size()); ++c) {
        if (node.class_counts[c] <= 0.0) continue;
        double score = std::log(node.class_counts[c] / total);
        if (c < static_cast<int>(node.moments.size()) && !node.moments[c].empty()) {
            for (Eigen::Index f = 0; f < x.size(); ++f) {
                const auto& m = node.moments[c][f];
                if (m.n == 0) continue;
                const double var = m.variance();
                const double diff = x[f] - m.mean;
                score += -0.5 * (std::log(2.0 * M_PI * var) + diff * diff / var);
            }
        }
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

int HoeffdingTree::predict(const Eigen::VectorXd& x) const {
    const Node* node = route(x);
    if (node->class_counts.empty()) return 0;
    return config_.nb_leaves ? leaf_naive_bayes(*node, x) : leaf_majority(*node);
}

void HoeffdingTree::train(const Eigen::VectorXd& x, int label) {
    if (label < 0) throw std::invalid_argument("labels must be >= 0");
    Node* node = route(x);
    if (label >= static_cast<int>(node->class_counts.size())) {
        node->class_counts.resize(label + 1, 0.0);
        node->moments.resize(label + 1);
    }
    if (node->moments[label].empty()) {
        node->moments[label].resize(x.size());
    }
    node->class_counts[label] += 1.0;
    for (Eigen::Index f = 0; f < x.size(); ++f) node->moments[label][f].add(x[f]);
    node->seen_since_attempt += 1.0;
    if (node->seen_since_attempt >= static_cast<double>(config_.grace_period) &&
        node->depth < config_.max_depth) {
        node->seen_since_attempt = 0.0;
        try_split(*node);
    }
}

void HoeffdingTree::try_split(Node& node) {
    const int num_classes = static_cast<int>(node.class_counts.size());
    // Only classes with real observations at this leaf take part in the
    // evaluation; inherited projected counts come without moment estimators.
    std::vector<bool> eligible(num_classes, false);
    std::vector<double> counts(num_classes, 0.0);
    int present = 0;
    double total = 0.0;
    int num_features = 0;
    for (int c = 0; c < num_classes; ++c) {
        if (node.class_counts[c] > 0.0 && !node.moments[c].empty()) {
            eligible[c] = true;
            counts[c] = node.class_counts[c];
            ++present;
            total += counts[c];
            num_features = static_cast<int>(node.moments[c].size());
        }
    }
    if (present < 2) return;  // pure leaf

    const double parent_entropy = entropy(counts, total);

    struct Candidate {
        double gain = -1.0;
        int feature = -1;
        double threshold = 0.0;
        std::vector<double> left_counts;
        std::vector<double> right_counts;
    };
    Candidate best, second;

    std::vector<double> left(num_classes), right(num_classes);
    for (int f = 0; f < num_features; ++f) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < num_classes; ++c) {
            if (eligible[c] && node.moments[c][f].n > 0) {
                lo = std::min(lo, node.moments[c][f].min);
                hi = std::max(hi, node.moments[c][f].max);
            }
        }
        if (!(hi > lo)) continue;
        Candidate feature_best;
        for (int i = 1; i <= config_.split_candidates; ++i) {
            const double threshold =
                lo + (hi - lo) * static_cast<double>(i) /
                         static_cast<double>(config_.split_candidates + 1);
            double n_left = 0.0;
            for (int c = 0; c < num_classes; ++c) {
                const double below =
                    eligible[c] ? counts[c] * node.moments[c][f].fraction_below(threshold)
                                : 0.0;
                left[c] = below;
                right[c] = counts[c] - below;
                n_left += below;
            }
            const double n_right = total - n_left;
            if (n_left <= 0.0 || n_right <= 0.0) continue;
            const double gain = parent_entropy -
                                (n_left / total) * entropy(left, n_left) -
                                (n_right / total) * entropy(right, n_right);
            if (gain > feature_best.gain) {
                feature_best = Candidate{gain, f, threshold, left, right};
            }
        }
        if (feature_best.gain > best.gain) {
            second = std::move(best);
            best = std::move(feature_best);
        } else if (feature_best.gain > second.gain) {
            second = std::move(feature_best);
        }
    }
    if (best.feature < 0 || best.gain <= 0.0) return;

    const double range = std::log2(static_cast<double>(present));
    const double epsilon =
        std::sqrt(range * range * std::log(1.0 / config_.split_confidence) / (2.0 * total));
    const double runner_up = second.gain > 0.0 ? second.gain : 0.0;
    if (!(best.gain - runner_up > epsilon || epsilon < config_.tie_threshold)) return;

    node.leaf = false;
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = std::make_unique<Node>();
    node.right = std::make_unique<Node>();
    node.left->depth = node.depth + 1;
    node.right->depth = node.depth + 1;
    // Children start from the projected class distributions of the split.
    node.left->class_counts = std::move(best.left_counts);
    node.right->class_counts = std::move(best.right_counts);
    node.left->moments.resize(num_classes);
    node.right->moments.resize(num_classes);
    node.class_counts.clear();
    node.moments.clear();
    ++splits_;
}

int HoeffdingTree::depth() const {
    int deepest = 0;
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, n->depth);
        if (!n->leaf) {
            stack.push_back(n->left.get());
            stack.push_back(n->right.get());
        }
    }
    return deepest;
}

std::optional<std::pair<int, double>> HoeffdingTree::root_split() const {
    if (root_->leaf) return std::nullopt;
    return std::make_pair(root_->feature, root_->threshold);
}

void HoeffdingTree::reset(std::uint64_t) {
    root_ = std::make_unique<Node>();
    splits_ = 0;
}

}  // namespace driftbench
