#include "driftbench/catalog.hpp"

#include <cmath>
#include <filesystem>

#include "driftbench/errors.hpp"
#include "driftbench/scenario_io.hpp"

namespace driftbench {

namespace {

constexpr long kLength = 10001;

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

/// The dataset table lists per-axis variances; components take stddevs.
Eigen::VectorXd stddev_from_variances(std::initializer_list<double> vars) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(vars.size()));
    Eigen::Index i = 0;
    for (double x : vars) v[i++] = std::sqrt(x);
    return v;
}

std::vector<PlaneRotation> rot2d(double deg) {
    if (deg == 0.0) return {};
    return {PlaneRotation{0, 1, deg}};
}

TransformPhase move_phase(long duration, Eigen::VectorXd translation) {
    TransformPhase ph;
    ph.duration = duration;
    ph.translation = std::move(translation);
    return ph;
}

TransformPhase identity_phase(long duration) {
    TransformPhase ph;
    ph.duration = duration;
    return ph;
}

TransformPhase weight_phase(long duration, double target) {
    TransformPhase ph;
    ph.duration = duration;
    ph.weight_target = target;
    return ph;
}

ComponentTimeline component(Eigen::VectorXd center, Eigen::VectorXd stddev,
                            double rotation_deg, std::vector<TransformPhase> phases,
                            double weight = 1.0, long start = 0) {
    return ComponentTimeline(start, weight, std::move(center), std::move(stddev),
                             rot2d(rotation_deg), std::move(phases));
}

Scenario build_nsgt(const std::string& name, double move) {
    const auto sd = stddev_from_variances({2.5, 1.0});
    return Scenario(
        name, 2, kLength,
        {ClassSpec{"A", 1.0, {component(vec2(0, 0), sd, 45, {move_phase(9999, vec2(move, move))})}},
         ClassSpec{"B", 1.0, {component(vec2(5, 0), sd, -45, {move_phase(9999, vec2(move, move))})}}});
}

Scenario build_nsgr() {
    const auto sd = stddev_from_variances({2.0, 5.0});
    auto orbit_phase = [] {
        TransformPhase ph;
        ph.duration = 9999;
        ph.orbit = OrbitSpec{Eigen::VectorXd::Zero(2), 360.0};
        return ph;
    };
    return Scenario(
        "NSGR", 2, kLength,
        {ClassSpec{"A", 1.0, {component(vec2(10, 0), sd, 45, {orbit_phase()})}},
         ClassSpec{"B", 1.0, {component(vec2(-10, 0), sd, 45, {orbit_phase()})}}});
}

Scenario build_nslc() {
    const auto sd = stddev_from_variances({2.5, 1.0});
    return Scenario(
        "NSLC", 2, kLength,
        {ClassSpec{"A", 1.0, {component(vec2(-2, 2), sd, 45, {move_phase(9999, vec2(0, -4))})}},
         ClassSpec{"B", 1.0, {component(vec2(2, -2), sd, -45, {move_phase(9999, vec2(0, 4))})}}});
}

Scenario build_nsgt_i() {
    const auto sd = stddev_from_variances({2.5, 1.0});
    auto phases = [] {
        return std::vector<TransformPhase>{move_phase(4999, vec2(10, 10)),
                                           move_phase(0, vec2(-10, -10)),
                                           move_phase(4999, vec2(10, 10))};
    };
    return Scenario(
        "NSGT-I", 2, kLength,
        {ClassSpec{"A", 1.0, {component(vec2(0, 0), sd, 45, phases())}},
         ClassSpec{"B", 1.0, {component(vec2(5, 0), sd, -45, phases())}}});
}

Scenario build_nspc() {
    const auto sd = stddev_from_variances({2.5, 1.0});
    return Scenario(
        "NSPC", 2, kLength,
        {ClassSpec{"A",
                   1.0,
                   {component(vec2(-2, 0), sd, 45,
                              {identity_phase(499), weight_phase(8999, 0.45)}, 0.05),
                    component(vec2(2, 0), sd, -45,
                              {identity_phase(499), weight_phase(8999, 0.05)}, 0.45)}},
         ClassSpec{"B", 1.0,
                   {component(vec2(0, 3.5), stddev_from_variances({1.0, 1.0}), 0, {}, 0.5)}}});
}

Scenario build_nspc_a() {
    const auto sd = stddev_from_variances({2.5, 1.0});
    return Scenario(
        "NSPC-A", 2, kLength,
        {ClassSpec{"A",
                   1.0,
                   {component(vec2(-2, 0), sd, 45,
                              {identity_phase(4999), weight_phase(0, 0.5)}, 0.0),
                    component(vec2(2, 0), sd, -45,
                              {identity_phase(4999), weight_phase(0, 0.0)}, 0.5)}},
         ClassSpec{"B", 1.0,
                   {component(vec2(0, 3.5), stddev_from_variances({1.0, 1.0}), 0, {}, 0.5)}}});
}

Scenario build_nsgt_5d() {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(5);
    Eigen::VectorXd center_b = Eigen::VectorXd::Zero(5);
    center_b[0] = 3.15;
    const Eigen::VectorXd move = Eigen::VectorXd::Constant(5, 6.3);
    auto comp = [&](Eigen::VectorXd center) {
        return ComponentTimeline(0, 0.5, std::move(center), ones, {},
                                 {move_phase(9999, move)});
    };
    return Scenario("NSGT-5D", 5, kLength,
                    {ClassSpec{"A", 1.0, {comp(Eigen::VectorXd::Zero(5))}},
                     ClassSpec{"B", 1.0, {comp(center_b)}}});
}

Scenario build_nscx() {
    auto a1_phase1 = [] {
        TransformPhase ph;
        ph.duration = 4999;
        ph.translation = vec2(5, 5);
        ph.rotation = {PlaneRotation{0, 1, 90.0}};
        ph.scale = 2.0;
        return ph;
    };
    auto a1_phase2 = [] {
        TransformPhase ph;
        ph.duration = 4999;
        ph.translation = vec2(5, 5);
        ph.weight_target = 1.0;
        return ph;
    };
    auto b_phase = [](long duration, double wx, double wy, double target) {
        TransformPhase ph;
        ph.duration = duration;
        ph.translation = vec2(wx, wy);
        ph.rotation = {PlaneRotation{0, 1, 30.0}};
        ph.weight_target = target;
        return ph;
    };
    return Scenario(
        "NSCX", 2, kLength,
        {ClassSpec{"A",
                   1.0,
                   {component(vec2(0, 0), stddev_from_variances({2.5, 1.0}), 30,
                              {a1_phase1(), a1_phase2()}, 0.65),
                    component(vec2(0, -4), stddev_from_variances({0.6, 2.0}), 0, {}, 0.35)}},
         ClassSpec{"B", 1.0,
                   {component(vec2(-2, 3), stddev_from_variances({1.5, 0.5}), 0,
                              {weight_phase(499, 0.2), b_phase(1499, 3, -4, 0.5),
                               b_phase(2499, 4, -1, 0.8), b_phase(5499, 6, 5, 1.0)},
                              0.0)}}});
}

}  // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "NSGT", "NSGT-F", "NSGR", "NSLC", "NSGT-I", "NSPC", "NSPC-A", "NSGT-5D", "NSCX"};
    return names;
}

bool is_catalog_name(const std::string& name) {
    const auto& names = catalog_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

CatalogEntry build_catalog_entry(const std::string& name) {
    if (name == "NSGT") return {name, build_nsgt("NSGT", 10.0), 2.95};
    if (name == "NSGT-F") return {name, build_nsgt("NSGT-F", 30.0), 2.91};
    if (name == "NSGR") return {name, build_nsgr(), 0.00};
    if (name == "NSLC") return {name, build_nslc(), 4.05};
    if (name == "NSGT-I") return {name, build_nsgt_i(), 2.93};
    if (name == "NSPC") return {name, build_nspc(), 5.76};
    if (name == "NSPC-A") return {name, build_nspc_a(), 5.37};
    if (name == "NSGT-5D") return {name, build_nsgt_5d(), 5.74};
    if (name == "NSCX") return {name, build_nscx(), 4.18};
    throw UnknownScenarioError("unknown scenario '" + name + "'");
}

Scenario resolve_scenario(const std::string& name_or_path) {
    if (is_catalog_name(name_or_path)) {
        return build_catalog_entry(name_or_path).scenario;
    }
    if (std::filesystem::exists(name_or_path)) {
        return load_scenario(name_or_path);
    }
    throw UnknownScenarioError("'" + name_or_path +
                               "' is neither a catalog scenario nor a readable file");
}

}  // namespace driftbench
