#pragma once

#include <Eigen/Dense>
#include <vector>

#include "driftbench/rng.hpp"

namespace driftbench {

/// Rotation by `angle_deg` in the (axis_a, axis_b) coordinate plane.
struct PlaneRotation {
    int axis_a = 0;
    int axis_b = 1;
    double angle_deg = 0.0;
};

/// Product R = R_n(f*a_n) ... R_1(f*a_1) of the given planar rotations,
/// each scaled by `fraction`, applied in list order.
Eigen::MatrixXd rotation_matrix(int dimension, const std::vector<PlaneRotation>& rotations,
                                double fraction = 1.0);

/// Covariance R * diag(stddev^2) * R^T.  Throws std::invalid_argument on a
/// non-positive stddev entry or a rotation with repeated/out-of-range axes.
Eigen::MatrixXd covariance_from(const Eigen::VectorXd& stddev,
                                const std::vector<PlaneRotation>& rotations);

struct GaussianParams {
    Eigen::VectorXd center;
    Eigen::MatrixXd covariance;

    int dimension() const { return static_cast<int>(center.size()); }

    /// Checks symmetry (1e-9), strictly positive eigenvalues, and matching
    /// dimensions; throws std::invalid_argument otherwise.
    void validate() const;
};

/// Gaussian with its Cholesky factor precomputed, ready for repeated pdf
/// evaluation and sampling.  A 1e-12 floor is added to the covariance
/// diagonal before factorization.
class FrozenGaussian {
public:
    explicit FrozenGaussian(const GaussianParams& params);

    double log_pdf(const Eigen::VectorXd& x) const;

    /// center + L*z with z drawn via rng.fill_standard_normal.
    Eigen::VectorXd sample(Rng& rng) const;

    const Eigen::VectorXd& center() const { return center_; }
    const Eigen::MatrixXd& chol_lower() const { return chol_lower_; }

private:
    Eigen::VectorXd center_;
    Eigen::MatrixXd chol_lower_;
    double log_norm_;  // -(d/2) log(2*pi) - sum(log(diag(L)))
};

}  // namespace driftbench
