#include "driftbench/gaussian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "driftbench/errors.hpp"

namespace driftbench {

namespace {
constexpr double kVarianceFloor = 1e-12;
constexpr double kSymmetryTolerance = 1e-9;

double deg2rad(double deg) { return deg * M_PI / 180.0; }
}  // namespace

Eigen::MatrixXd rotation_matrix(int dimension, const std::vector<PlaneRotation>& rotations,
                                double fraction) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dimension, dimension);
    for (const auto& rot : rotations) {
        if (rot.axis_a < 0 || rot.axis_b < 0 || rot.axis_a >= dimension ||
            rot.axis_b >= dimension) {
            throw std::invalid_argument("rotation axis out of range for dimension " +
                                        std::to_string(dimension));
        }
        if (rot.axis_a == rot.axis_b) {
            throw std::invalid_argument("rotation plane uses the same axis twice");
        }
        const double theta = deg2rad(fraction * rot.angle_deg);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dimension, dimension);
        g(rot.axis_a, rot.axis_a) = c;
        g(rot.axis_a, rot.axis_b) = -s;
        g(rot.axis_b, rot.axis_a) = s;
        g(rot.axis_b, rot.axis_b) = c;
        r = g * r;
    }
    return r;
}

Eigen::MatrixXd covariance_from(const Eigen::VectorXd& stddev,
                                const std::vector<PlaneRotation>& rotations) {
    for (Eigen::Index i = 0; i < stddev.size(); ++i) {
        if (!(stddev[i] > 0.0)) {
            throw std::invalid_argument("stddev entries must be strictly positive");
        }
    }
    const Eigen::MatrixXd r =
        rotation_matrix(static_cast<int>(stddev.size()), rotations);
    return r * stddev.array().square().matrix().asDiagonal() * r.transpose();
}

void GaussianParams::validate() const {
    if (center.size() == 0) {
        throw std::invalid_argument("gaussian center is empty");
    }
    if (covariance.rows() != center.size() || covariance.cols() != center.size()) {
        throw std::invalid_argument("covariance dimensions do not match center");
    }
    const double asym = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTolerance) {
        throw std::invalid_argument("covariance is not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covariance);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
        throw std::invalid_argument("covariance is not positive definite");
    }
}

FrozenGaussian::FrozenGaussian(const GaussianParams& params) : center_(params.center) {
    Eigen::MatrixXd cov = params.covariance;
    cov.diagonal().array() += kVarianceFloor;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw NumericalDegeneracyError("covariance Cholesky factorization failed");
    }
    chol_lower_ = llt.matrixL();
    const double d = static_cast<double>(center_.size());
    log_norm_ = -0.5 * d * std::log(2.0 * M_PI) -
                chol_lower_.diagonal().array().log().sum();
}

double FrozenGaussian::log_pdf(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd y =
        chol_lower_.triangularView<Eigen::Lower>().solve(x - center_);
    return log_norm_ - 0.5 * y.squaredNorm();
}

Eigen::VectorXd FrozenGaussian::sample(Rng& rng) const {
    Eigen::VectorXd z(center_.size());
    rng.fill_standard_normal(z);
    return center_ + chol_lower_ * z;
}

}  // namespace driftbench
