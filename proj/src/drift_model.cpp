#include "driftbench/drift_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "driftbench/errors.hpp"

namespace driftbench {

namespace {

/// State of a component partway through one phase.
struct PhaseCursor {
    Eigen::VectorXd center;
    Eigen::MatrixXd covariance;
    double weight;
};

PhaseCursor apply_phase(const PhaseCursor& start, const TransformPhase& phase, double f) {
    const int d = static_cast<int>(start.center.size());
    PhaseCursor out = start;
    if (phase.translation.size() > 0) {
        out.center += f * phase.translation;
    }
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(d, d);
    if (phase.orbit) {
        const Eigen::MatrixXd ro =
            rotation_matrix(d, {{0, 1, phase.orbit->angle_deg}}, f);
        out.center = phase.orbit->pivot + ro * (out.center - phase.orbit->pivot);
        r = ro * r;
    }
    if (!phase.rotation.empty()) {
        r = rotation_matrix(d, phase.rotation, f) * r;
    }
    out.covariance = r * start.covariance * r.transpose();
    out.covariance *= 1.0 + f * (phase.scale - 1.0);
    if (phase.weight_target) {
        out.weight += f * (*phase.weight_target - out.weight);
    }
    return out;
}

double phase_weight(double start_weight, const TransformPhase& phase, double f) {
    if (!phase.weight_target) return start_weight;
    return start_weight + f * (*phase.weight_target - start_weight);
}

}  // namespace

bool TransformPhase::is_identity() const {
    const bool no_move = translation.size() == 0 || translation.isZero(0.0);
    return no_move && rotation.empty() && scale == 1.0 && !weight_target && !orbit;
}

ComponentTimeline::ComponentTimeline(long start_index, double base_weight,
                                     Eigen::VectorXd center, Eigen::VectorXd stddev,
                                     std::vector<PlaneRotation> base_rotation,
                                     std::vector<TransformPhase> phases)
    : start_index_(start_index),
      base_weight_(base_weight),
      base_center_(std::move(center)),
      base_stddev_(std::move(stddev)),
      base_rotation_(std::move(base_rotation)),
      phases_(std::move(phases)) {
    if (start_index_ < 0) throw std::invalid_argument("start_index must be >= 0");
    if (base_weight_ < 0.0) throw std::invalid_argument("component weight must be >= 0");
    if (base_center_.size() != base_stddev_.size()) {
        throw std::invalid_argument("center and stddev dimensions differ");
    }
    base_.center = base_center_;
    base_.covariance = covariance_from(base_stddev_, base_rotation_);
    base_.validate();
    const int d = dimension();
    for (const auto& ph : phases_) {
        if (ph.duration < 0) throw std::invalid_argument("phase duration must be >= 0");
        if (ph.translation.size() > 0 && ph.translation.size() != d) {
            throw std::invalid_argument("phase translation dimension mismatch");
        }
        if (!(ph.scale > 0.0)) throw std::invalid_argument("phase scale must be > 0");
        if (ph.weight_target && *ph.weight_target < 0.0) {
            throw std::invalid_argument("phase weight target must be >= 0");
        }
        if (ph.orbit) {
            if (ph.orbit->pivot.size() != d) {
                throw std::invalid_argument("orbit pivot dimension mismatch");
            }
            if (d < 2) throw std::invalid_argument("orbit requires dimension >= 2");
        }
        for (const auto& rot : ph.rotation) {
            if (rot.axis_a == rot.axis_b || rot.axis_a < 0 || rot.axis_b < 0 ||
                rot.axis_a >= d || rot.axis_b >= d) {
                throw std::invalid_argument("phase rotation axes invalid");
            }
        }
    }
}

std::optional<ComponentState> ComponentTimeline::params_at(long t) const {
    if (t < start_index_) return std::nullopt;
    PhaseCursor cur{base_.center, base_.covariance, base_weight_};
    long phase_start = start_index_;
    for (const auto& ph : phases_) {
        const long phase_end = phase_start + ph.duration;
        if (t <= phase_end) {
            const double f = ph.duration == 0
                                 ? 1.0
                                 : static_cast<double>(t - phase_start) /
                                       static_cast<double>(ph.duration);
            cur = apply_phase(cur, ph, f);
            return ComponentState{GaussianParams{cur.center, cur.covariance}, cur.weight};
        }
        cur = apply_phase(cur, ph, 1.0);
        phase_start = phase_end + 1;
    }
    // Cascade exhausted: persist with the final parameters.
    return ComponentState{GaussianParams{cur.center, cur.covariance}, cur.weight};
}

std::optional<double> ComponentTimeline::weight_at(long t) const {
    if (t < start_index_) return std::nullopt;
    double w = base_weight_;
    long phase_start = start_index_;
    for (const auto& ph : phases_) {
        const long phase_end = phase_start + ph.duration;
        if (t <= phase_end) {
            const double f = ph.duration == 0
                                 ? 1.0
                                 : static_cast<double>(t - phase_start) /
                                       static_cast<double>(ph.duration);
            return phase_weight(w, ph, f);
        }
        w = phase_weight(w, ph, 1.0);
        phase_start = phase_end + 1;
    }
    return w;
}

Scenario::Scenario(std::string name, int dimension, long length,
                   std::vector<ClassSpec> classes)
    : name_(std::move(name)),
      dimension_(dimension),
      length_(length),
      classes_(std::move(classes)) {
    validate();
}

void Scenario::validate() const {
    if (dimension_ < 1) throw std::invalid_argument("scenario dimension must be >= 1");
    if (length_ < 1) throw std::invalid_argument("scenario length must be >= 1");
    if (classes_.empty()) throw std::invalid_argument("scenario has no classes");
    for (size_t ci = 0; ci < classes_.size(); ++ci) {
        const auto& cls = classes_[ci];
        const std::string where = "classes[" + std::to_string(ci) + "]";
        if (cls.class_weight < 0.0) {
            throw std::invalid_argument(where + ": class weight must be >= 0");
        }
        if (cls.components.empty()) {
            throw std::invalid_argument(where + ": class has no components");
        }
        for (size_t ki = 0; ki < cls.components.size(); ++ki) {
            if (cls.components[ki].dimension() != dimension_) {
                throw std::invalid_argument(where + ".components[" + std::to_string(ki) +
                                            "]: dimension mismatch");
            }
        }
    }
    // Every step needs at least one active component with positive total weight.
    for (long t = 0; t < length_; ++t) {
        double total = 0.0;
        for (const auto& cls : classes_) {
            for (const auto& comp : cls.components) {
                if (const auto w = comp.weight_at(t)) total += cls.class_weight * *w;
            }
        }
        if (!(total > 0.0)) {
            throw DegenerateScenarioError("scenario '" + name_ +
                                          "': total active weight is zero at t=" +
                                          std::to_string(t));
        }
    }
}

std::vector<ComponentPrior> Scenario::priors_at(long t) const {
    std::vector<ComponentPrior> out;
    double total = 0.0;
    for (int ci = 0; ci < class_count(); ++ci) {
        const auto& cls = classes_[ci];
        for (int ki = 0; ki < static_cast<int>(cls.components.size()); ++ki) {
            if (const auto w = cls.components[ki].weight_at(t)) {
                const double mass = cls.class_weight * *w;
                out.push_back({ComponentRef{ci, ki}, mass});
                total += mass;
            }
        }
    }
    if (!(total > 0.0)) {
        throw DegenerateScenarioError("scenario '" + name_ +
                                      "': all active weights are zero at t=" +
                                      std::to_string(t));
    }
    for (auto& cp : out) cp.prior /= total;
    return out;
}

double Scenario::density(long t, const Eigen::VectorXd& x) const {
    return ScenarioFrame(*this, t).density(x);
}

Eigen::VectorXd Scenario::posterior(long t, const Eigen::VectorXd& x) const {
    return ScenarioFrame(*this, t).posterior(x);
}

int Scenario::bayes_classify(long t, const Eigen::VectorXd& x) const {
    return ScenarioFrame(*this, t).bayes_classify(x);
}

ScenarioFrame::ScenarioFrame(const Scenario& scenario, long t)
    : scenario_(&scenario), t_(t) {
    const auto priors = scenario.priors_at(t);
    components_.reserve(priors.size());
    for (const auto& cp : priors) {
        const auto& comp =
            scenario.classes()[cp.id.class_index].components[cp.id.component_index];
        auto state = comp.params_at(t);
        // priors_at already established activity.
        FrozenGaussian frozen(state->params);
        components_.push_back(
            Component{cp.id, cp.prior, std::move(*state), std::move(frozen)});
    }
}

Eigen::VectorXd ScenarioFrame::class_log_densities(const Eigen::VectorXd& x) const {
    const int nc = scenario_->class_count();
    Eigen::VectorXd maxima = Eigen::VectorXd::Constant(nc, -std::numeric_limits<double>::infinity());
    std::vector<double> terms(components_.size());
    for (size_t i = 0; i < components_.size(); ++i) {
        const auto& comp = components_[i];
        terms[i] = comp.prior > 0.0
                       ? std::log(comp.prior) + comp.frozen.log_pdf(x)
                       : -std::numeric_limits<double>::infinity();
        maxima[comp.id.class_index] = std::max(maxima[comp.id.class_index], terms[i]);
    }
    Eigen::VectorXd out = Eigen::VectorXd::Constant(nc, -std::numeric_limits<double>::infinity());
    for (int c = 0; c < nc; ++c) {
        if (!std::isfinite(maxima[c])) continue;
        double acc = 0.0;
        for (size_t i = 0; i < components_.size(); ++i) {
            if (components_[i].id.class_index == c && std::isfinite(terms[i])) {
                acc += std::exp(terms[i] - maxima[c]);
            }
        }
        out[c] = maxima[c] + std::log(acc);
    }
    return out;
}

double ScenarioFrame::density(const Eigen::VectorXd& x) const {
    if (x.size() != scenario_->dimension()) {
        throw std::invalid_argument("pattern dimension does not match scenario");
    }
    double acc = 0.0;
    for (const auto& comp : components_) {
        if (comp.prior > 0.0) acc += comp.prior * std::exp(comp.frozen.log_pdf(x));
    }
    return acc;
}

Eigen::VectorXd ScenarioFrame::posterior(const Eigen::VectorXd& x) const {
    if (x.size() != scenario_->dimension()) {
        throw std::invalid_argument("pattern dimension does not match scenario");
    }
    const Eigen::VectorXd logs = class_log_densities(x);
    const double top = logs.maxCoeff();
    if (!std::isfinite(top)) {
        throw NumericalDegeneracyError("total density is zero even in log space");
    }
    Eigen::VectorXd out = (logs.array() - top).exp();
    out /= out.sum();
    return out;
}

int ScenarioFrame::bayes_classify(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd logs = class_log_densities(x);
    if (!std::isfinite(logs.maxCoeff())) {
        throw NumericalDegeneracyError("total density is zero even in log space");
    }
    int best = 0;
    for (int c = 1; c < logs.size(); ++c) {
        if (logs[c] > logs[best]) best = c;  // ties keep the lowest index
    }
    return best;
}

LabeledPattern ScenarioFrame::sample(Rng& rng) const {
    const double u = rng.uniform();
    double cum = 0.0;
    const Component* chosen = &components_.back();
    for (const auto& comp : components_) {
        cum += comp.prior;
        if (u < cum) {
            chosen = &comp;
            break;
        }
    }
    LabeledPattern p;
    p.t = t_;
    p.x = chosen->frozen.sample(rng);
    p.class_index = chosen->id.class_index;
    p.component = chosen->id;
    return p;
}

LabeledPattern sample(const Scenario& scenario, long t, Rng& rng) {
    return ScenarioFrame(scenario, t).sample(rng);
}

StreamGenerator::StreamGenerator(const Scenario& scenario, std::uint64_t seed)
    : scenario_(&scenario), rng_(seed) {}

std::optional<LabeledPattern> StreamGenerator::next() {
    if (t_ >= scenario_->length()) return std::nullopt;
    LabeledPattern p = sample(*scenario_, t_, rng_);
    ++t_;
    return p;
}

}  // namespace driftbench
