#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "driftbench/gaussian.hpp"
#include "driftbench/rng.hpp"

namespace driftbench {

/// Rigid rotation of a component about a fixed pivot, in the (0,1) plane.
struct OrbitSpec {
    Eigen::VectorXd pivot;
    double angle_deg = 0.0;
};

/// One phase of a component's transform cascade.  A phase with duration D
/// covers the D+1 steps [start, start+D]; its effect ramps linearly with the
/// elapsed fraction f, reaching the full transform at f = 1.  A duration of 0
/// applies the whole transform at the phase's single step.  When both orbit
/// and rotation are present, the orbit is applied first.
struct TransformPhase {
    long duration = 0;
    Eigen::VectorXd translation;          // empty means none
    std::vector<PlaneRotation> rotation;  // covariance rotation(s)
    double scale = 1.0;                   // variance multiplier over the phase
    std::optional<double> weight_target;
    std::optional<OrbitSpec> orbit;

    bool is_identity() const;
};

struct ComponentState {
    GaussianParams params;
    double weight = 0.0;
};

/// A Gaussian component together with its timed transform cascade.  The
/// component is inactive before start_index; once the cascade is exhausted it
/// persists with its final parameters.  Immutable after construction.
class ComponentTimeline {
public:
    ComponentTimeline(long start_index, double base_weight, Eigen::VectorXd center,
                      Eigen::VectorXd stddev, std::vector<PlaneRotation> base_rotation,
                      std::vector<TransformPhase> phases);

    /// Interpolated parameters and weight at step t, or nullopt while the
    /// component does not exist yet.
    std::optional<ComponentState> params_at(long t) const;

    /// Weight-only fast path of params_at (same phase semantics).
    std::optional<double> weight_at(long t) const;

    long start_index() const { return start_index_; }
    double base_weight() const { return base_weight_; }
    const Eigen::VectorXd& base_center() const { return base_center_; }
    const Eigen::VectorXd& base_stddev() const { return base_stddev_; }
    const std::vector<PlaneRotation>& base_rotation() const { return base_rotation_; }
    const std::vector<TransformPhase>& phases() const { return phases_; }
    int dimension() const { return static_cast<int>(base_center_.size()); }

private:
    long start_index_;
    double base_weight_;
    Eigen::VectorXd base_center_;
    Eigen::VectorXd base_stddev_;
    std::vector<PlaneRotation> base_rotation_;
    std::vector<TransformPhase> phases_;
    GaussianParams base_;
};

struct ClassSpec {
    std::string name;
    double class_weight = 1.0;
    std::vector<ComponentTimeline> components;
};

struct ComponentRef {
    int class_index = 0;
    int component_index = 0;

    friend bool operator==(const ComponentRef&, const ComponentRef&) = default;
};

struct ComponentPrior {
    ComponentRef id;
    double prior = 0.0;
};

struct LabeledPattern {
    long t = 0;
    Eigen::VectorXd x;
    int class_index = 0;
    ComponentRef component;
};

/// A named drifting mixture-of-Gaussian-mixtures over `length` time steps.
/// Immutable after construction and safe to share across threads.
class Scenario {
public:
    Scenario(std::string name, int dimension, long length, std::vector<ClassSpec> classes);

    const std::string& name() const { return name_; }
    int dimension() const { return dimension_; }
    long length() const { return length_; }
    const std::vector<ClassSpec>& classes() const { return classes_; }
    int class_count() const { return static_cast<int>(classes_.size()); }
    const std::string& class_name(int i) const { return classes_.at(i).name; }

    /// Priors over the components active at t (absent components omitted);
    /// the returned priors sum to 1.  Throws DegenerateScenarioError when
    /// every active weight is zero.
    std::vector<ComponentPrior> priors_at(long t) const;

    double density(long t, const Eigen::VectorXd& x) const;

    /// Ground-truth class posterior at (t, x), indexed by class; evaluated in
    /// log space and renormalized.
    Eigen::VectorXd posterior(long t, const Eigen::VectorXd& x) const;

    /// Argmax-posterior class index; ties go to the lowest index.
    int bayes_classify(long t, const Eigen::VectorXd& x) const;

private:
    std::string name_;
    int dimension_;
    long length_;
    std::vector<ClassSpec> classes_;

    void validate() const;
};

/// Snapshot of a scenario at one time step: active components with priors
/// and frozen Gaussians.  Build once per step, query many times.
class ScenarioFrame {
public:
    ScenarioFrame(const Scenario& scenario, long t);

    struct Component {
        ComponentRef id;
        double prior;
        ComponentState state;
        FrozenGaussian frozen;
    };

    long t() const { return t_; }
    const std::vector<Component>& components() const { return components_; }

    double density(const Eigen::VectorXd& x) const;
    Eigen::VectorXd posterior(const Eigen::VectorXd& x) const;
    int bayes_classify(const Eigen::VectorXd& x) const;
    LabeledPattern sample(Rng& rng) const;

private:
    const Scenario* scenario_;
    long t_;
    std::vector<Component> components_;

    /// Per-class logsumexp of log(prior) + log_pdf; shared by density,
    /// posterior and the oracle.
    Eigen::VectorXd class_log_densities(const Eigen::VectorXd& x) const;
};

/// Draws one labeled pattern at step t: roulette over priors_at, then a
/// Cholesky-transformed standard normal vector from the chosen component.
LabeledPattern sample(const Scenario& scenario, long t, Rng& rng);

/// Single-pass, constant-memory stream of the scenario's `length` patterns.
class StreamGenerator {
public:
    StreamGenerator(const Scenario& scenario, std::uint64_t seed);

    /// Next pattern in time order, or nullopt once the stream is exhausted.
    std::optional<LabeledPattern> next();

    long position() const { return t_; }

private:
    const Scenario* scenario_;
    long t_ = 0;
    Rng rng_;
};

}  // namespace driftbench
