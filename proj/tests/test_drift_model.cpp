#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "driftbench/catalog.hpp"
#include "driftbench/drift_model.hpp"
#include "driftbench/errors.hpp"

using namespace driftbench;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

ComponentTimeline translating_component(double rx, double ry, long duration) {
    TransformPhase ph;
    ph.duration = duration;
    ph.translation = vec2(rx, ry);
    return ComponentTimeline(0, 1.0, vec2(0, 0), vec2(1, 1), {}, {ph});
}

Scenario one_component_scenario(long length = 100) {
    return Scenario("single", 2, length,
                    {ClassSpec{"A", 1.0, {ComponentTimeline(0, 1.0, vec2(0, 0), vec2(1, 1), {}, {})}}});
}

}  // namespace

TEST_CASE("params_at follows the NSGT translation") {
    const auto entry = build_catalog_entry("NSGT");
    const auto& comp = entry.scenario.classes()[0].components[0];

    const auto at0 = comp.params_at(0);
    REQUIRE(at0.has_value());
    CHECK(at0->params.center.isApprox(vec2(0, 0), 1e-12));
    CHECK(at0->weight == doctest::Approx(1.0));

    const auto at_end = comp.params_at(9999);
    REQUIRE(at_end.has_value());
    CHECK(at_end->params.center.isApprox(vec2(10, 10), 1e-9));

    // Beyond the cascade the component persists with its final parameters.
    const auto beyond = comp.params_at(10000);
    REQUIRE(beyond.has_value());
    CHECK(beyond->params.center.isApprox(at_end->params.center, 1e-12));
    CHECK(beyond->params.covariance.isApprox(at_end->params.covariance, 1e-12));
}

TEST_CASE("params_at midpoint of a pure translation moves half way") {
    const auto comp = translating_component(3.0, -7.0, 100);
    const auto mid = comp.params_at(50);
    REQUIRE(mid.has_value());
    CHECK(mid->params.center.isApprox(vec2(1.5, -3.5), 1e-12));
}

TEST_CASE("params_at is absent before the start index") {
    ComponentTimeline comp(500, 1.0, vec2(0, 0), vec2(1, 1), {}, {});
    CHECK_FALSE(comp.params_at(0).has_value());
    CHECK_FALSE(comp.params_at(499).has_value());
    CHECK(comp.params_at(500).has_value());
}

TEST_CASE("a component with identity phases is stationary") {
    TransformPhase id1;
    id1.duration = 100;
    TransformPhase id2;
    id2.duration = 50;
    ComponentTimeline comp(10, 0.7, vec2(1, 2), vec2(2, 0.5), {{0, 1, 30.0}}, {id1, id2});
    const auto ref = comp.params_at(10);
    REQUIRE(ref.has_value());
    for (long t : {10L, 60L, 110L, 161L, 200L, 100000L}) {
        const auto st = comp.params_at(t);
        REQUIRE(st.has_value());
        CHECK(st->params.center.isApprox(ref->params.center, 1e-12));
        CHECK(st->params.covariance.isApprox(ref->params.covariance, 1e-12));
        CHECK(st->weight == doctest::Approx(ref->weight));
    }
}

TEST_CASE("phase boundaries are continuous for the canonical scenarios") {
    for (const auto& name : catalog_names()) {
        const auto entry = build_catalog_entry(name);
        for (const auto& cls : entry.scenario.classes()) {
            for (const auto& comp : cls.components) {
                long boundary = comp.start_index();
                for (size_t i = 0; i + 1 < comp.phases().size(); ++i) {
                    boundary += comp.phases()[i].duration;
                    if (comp.phases()[i + 1].duration == 0) {
                        ++boundary;
                        continue;  // instantaneous phases jump by design
                    }
                    const auto before = comp.params_at(boundary);
                    const auto after = comp.params_at(boundary + 1);
                    REQUIRE(before.has_value());
                    REQUIRE(after.has_value());
                    CHECK((before->params.center - after->params.center).norm() < 1e-9);
                    CHECK((before->params.covariance - after->params.covariance)
                              .cwiseAbs()
                              .maxCoeff() < 1e-9);
                    CHECK(std::abs(before->weight - after->weight) < 1e-9);
                    ++boundary;
                }
            }
        }
    }
}

TEST_CASE("NSGT-I applies its instantaneous reset at step 5000") {
    const auto entry = build_catalog_entry("NSGT-I");
    const auto& comp = entry.scenario.classes()[0].components[0];
    CHECK(comp.params_at(4999)->params.center.isApprox(vec2(10, 10), 1e-9));
    CHECK(comp.params_at(5000)->params.center.isApprox(vec2(0, 0), 1e-9));
    CHECK(comp.params_at(5001)->params.center.isApprox(vec2(0, 0), 1e-9));
    CHECK(comp.params_at(10000)->params.center.isApprox(vec2(10, 10), 1e-9));
}

TEST_CASE("NSGR orbits rigidly around the origin") {
    const auto entry = build_catalog_entry("NSGR");
    const auto& comp = entry.scenario.classes()[0].components[0];
    const auto start = comp.params_at(0);
    // Quarter turn after 1/4 of the phase: center rotates 90 degrees.
    const long quarter = 9999 / 4 + 1;  // f is (t/9999); pick t where f*360 ~ 90
    const auto st = comp.params_at(quarter);
    const double angle = 360.0 * static_cast<double>(quarter) / 9999.0 * M_PI / 180.0;
    Eigen::Matrix2d rot;
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    CHECK(st->params.center.isApprox(rot * start->params.center, 1e-9));
    CHECK(st->params.covariance.isApprox(rot * start->params.covariance * rot.transpose(), 1e-9));
    // Full turn returns to the start.
    const auto full = comp.params_at(9999);
    CHECK(full->params.center.isApprox(start->params.center, 1e-9));
    CHECK(full->params.covariance.isApprox(start->params.covariance, 1e-9));
}

TEST_CASE("orbit composes before the in-phase rotation") {
    TransformPhase ph;
    ph.duration = 100;
    ph.orbit = OrbitSpec{vec2(1, 1), 90.0};
    ph.rotation = {{0, 1, 40.0}};
    ComponentTimeline comp(0, 1.0, vec2(3, 1), vec2(2, 0.5), {}, {ph});
    const auto st = comp.params_at(50);  // f = 0.5
    const Eigen::MatrixXd r_orbit = rotation_matrix(2, {{0, 1, 90.0}}, 0.5);
    const Eigen::MatrixXd r_phase = rotation_matrix(2, {{0, 1, 40.0}}, 0.5);
    const Eigen::VectorXd expect_center = vec2(1, 1) + r_orbit * (vec2(3, 1) - vec2(1, 1));
    CHECK(st->params.center.isApprox(expect_center, 1e-12));
    const Eigen::MatrixXd base = covariance_from(vec2(2, 0.5), {});
    const Eigen::MatrixXd r = r_phase * r_orbit;
    CHECK(st->params.covariance.isApprox(r * base * r.transpose(), 1e-12));
}

TEST_CASE("priors: NSPC starts at the table's weights") {
    const auto entry = build_catalog_entry("NSPC");
    const auto priors = entry.scenario.priors_at(0);
    REQUIRE(priors.size() == 3);
    CHECK(priors[0].prior == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(priors[1].prior == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(priors[2].prior == doctest::Approx(0.50).epsilon(1e-12));
}

TEST_CASE("priors: NSPC half way through the ramp") {
    // Frozen from an independent interpolation script.
    const auto entry = build_catalog_entry("NSPC");
    const auto priors = entry.scenario.priors_at(5000);
    REQUIRE(priors.size() == 3);
    CHECK(priors[0].prior == doctest::Approx(0.25002222469163243).epsilon(1e-12));
    CHECK(priors[1].prior == doctest::Approx(0.24997777530836757).epsilon(1e-12));
    CHECK(priors[2].prior == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("priors: two equal components split evenly") {
    Scenario s("pair", 2, 10,
               {ClassSpec{"A", 1.0, {ComponentTimeline(0, 1.0, vec2(-1, 0), vec2(1, 1), {}, {})}},
                ClassSpec{"B", 1.0, {ComponentTimeline(0, 1.0, vec2(1, 0), vec2(1, 1), {}, {})}}});
    const auto priors = s.priors_at(5);
    REQUIRE(priors.size() == 2);
    CHECK(priors[0].prior == doctest::Approx(0.5));
    CHECK(priors[1].prior == doctest::Approx(0.5));
}

TEST_CASE("a scenario that loses all weight fails construction") {
    TransformPhase drop;
    drop.duration = 0;
    drop.weight_target = 0.0;
    TransformPhase lead;
    lead.duration = 4;
    CHECK_THROWS_AS(
        Scenario("dead", 2, 10,
                 {ClassSpec{"A", 1.0,
                            {ComponentTimeline(0, 1.0, vec2(0, 0), vec2(1, 1), {}, {lead, drop})}}}),
        DegenerateScenarioError);
}

TEST_CASE("density of a single standard component at its center") {
    const auto s = one_component_scenario();
    CHECK(s.density(0, vec2(0, 0)) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-9));
}

TEST_CASE("a zero-prior component contributes nothing to the density") {
    const auto base = one_component_scenario();
    // Same mixture plus a far-away component whose weight is zero.
    Scenario with_ghost(
        "ghost", 2, 100,
        {ClassSpec{"A", 1.0, {ComponentTimeline(0, 1.0, vec2(0, 0), vec2(1, 1), {}, {})}},
         ClassSpec{"B", 1.0, {ComponentTimeline(0, 0.0, vec2(50, 50), vec2(1, 1), {}, {})}}});
    for (double x : {-1.0, 0.0, 2.0}) {
        CHECK(with_ghost.density(7, vec2(x, 0.5)) ==
              doctest::Approx(base.density(7, vec2(x, 0.5))).epsilon(1e-12));
    }
}

TEST_CASE("density of NSGT at t=0 matches the brute-force pdf oracle") {
    // Frozen from an independent numeric evaluation of the two-component pdf.
    const auto entry = build_catalog_entry("NSGT");
    CHECK(entry.scenario.density(0, vec2(2.5, 0.0)) ==
          doctest::Approx(0.011293562200924588).epsilon(1e-9));
}

TEST_CASE("posterior is symmetric on the symmetry axis") {
    Scenario s("mirror", 2, 10,
               {ClassSpec{"A", 1.0, {ComponentTimeline(0, 1.0, vec2(-2, 0), vec2(1.5, 0.5), {{0, 1, 20.0}}, {})}},
                ClassSpec{"B", 1.0, {ComponentTimeline(0, 1.0, vec2(2, 0), vec2(1.5, 0.5), {{0, 1, -20.0}}, {})}}});
    const auto post = s.posterior(0, vec2(0.0, 1.3));
    CHECK(post[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(post[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("posterior saturates deep inside one class") {
    Scenario s("far", 2, 10,
               {ClassSpec{"A", 1.0, {ComponentTimeline(0, 1.0, vec2(-30, 0), vec2(1, 1), {}, {})}},
                ClassSpec{"B", 1.0, {ComponentTimeline(0, 1.0, vec2(30, 0), vec2(1, 1), {}, {})}}});
    const auto post = s.posterior(0, vec2(-30, 0));  // 60 sigma from B
    CHECK(post[0] > 0.999);
    CHECK(post.sum() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("posterior of NSLC at t=0 matches the brute-force oracle") {
    // Frozen from an independent numeric evaluation.
    const auto entry = build_catalog_entry("NSLC");
    const auto post = entry.scenario.posterior(0, vec2(-2, 2));
    CHECK(post[0] == doctest::Approx(0.9983411989198256).epsilon(1e-9));
    CHECK(post[1] == doctest::Approx(0.001658801080174425).epsilon(1e-6));
}

TEST_CASE("posterior stays normalized in the far tails (log-space path)") {
    const auto entry = build_catalog_entry("NSGT");
    const auto post = entry.scenario.posterior(0, vec2(300.0, -250.0));
    CHECK(std::isfinite(post.sum()));
    CHECK(post.sum() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bayes_classify takes the argmax and breaks ties low") {
    Scenario s("mirror", 2, 10,
               {ClassSpec{"A", 1.0, {ComponentTimeline(0, 1.0, vec2(-2, 0), vec2(1, 1), {}, {})}},
                ClassSpec{"B", 1.0, {ComponentTimeline(0, 1.0, vec2(2, 0), vec2(1, 1), {}, {})}}});
    CHECK(s.bayes_classify(0, vec2(-1.5, 0)) == 0);
    CHECK(s.bayes_classify(0, vec2(1.5, 0)) == 1);
    CHECK(s.bayes_classify(0, vec2(0, 0)) == 0);  // exact tie -> lowest index
}

TEST_CASE("sampling a single active component always returns it") {
    const auto s = one_component_scenario();
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto p = sample(s, 5, rng);
        CHECK(p.component.class_index == 0);
        CHECK(p.component.component_index == 0);
        CHECK(p.class_index == 0);
    }
}

TEST_CASE("NSPC component frequencies match the priors statistically") {
    const auto entry = build_catalog_entry("NSPC");
    Rng rng(11);
    const int n = 100000;
    std::array<long, 3> counts{0, 0, 0};
    for (int i = 0; i < n; ++i) {
        const auto p = sample(entry.scenario, 0, rng);
        CHECK(p.class_index == p.component.class_index);  // label owns the component
        const int flat = p.component.class_index == 1 ? 2 : p.component.component_index;
        ++counts[flat];
    }
    CHECK(std::abs(counts[0] / double(n) - 0.05) < 0.01);
    CHECK(std::abs(counts[1] / double(n) - 0.45) < 0.01);
    CHECK(std::abs(counts[2] / double(n) - 0.50) < 0.01);
}

TEST_CASE("identical seeds give bit-identical streams") {
    const auto entry = build_catalog_entry("NSCX");
    StreamGenerator a(entry.scenario, 7);
    StreamGenerator b(entry.scenario, 7);
    for (int i = 0; i < 500; ++i) {
        const auto pa = a.next();
        const auto pb = b.next();
        REQUIRE(pa.has_value());
        REQUIRE(pb.has_value());
        CHECK(pa->x == pb->x);
        CHECK(pa->class_index == pb->class_index);
        CHECK(pa->component == pb->component);
    }
}

TEST_CASE("streams run for exactly the scenario length") {
    const auto entry = build_catalog_entry("NSGT");
    StreamGenerator gen(entry.scenario, 1);
    long count = 0;
    long last_t = -1;
    while (auto p = gen.next()) {
        CHECK(p->t == last_t + 1);
        last_t = p->t;
        ++count;
    }
    CHECK(count == 10001);
}

TEST_CASE("all patterns of a one-class scenario carry that class") {
    const auto s = one_component_scenario(200);
    StreamGenerator gen(s, 4);
    while (auto p = gen.next()) CHECK(p->class_index == 0);
}

TEST_CASE("per-pattern generation time is flat across the stream") {
    const auto entry = build_catalog_entry("NSGT");
    double best_first = 1e300;
    double best_last = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
        StreamGenerator gen(entry.scenario, 2);
        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        for (int i = 0; i < 1000; ++i) gen.next();
        const auto t1 = clock::now();
        for (int i = 0; i < 8001; ++i) gen.next();
        const auto t2 = clock::now();
        for (int i = 0; i < 1000; ++i) gen.next();
        const auto t3 = clock::now();
        best_first = std::min(best_first, std::chrono::duration<double>(t1 - t0).count());
        best_last = std::min(best_last, std::chrono::duration<double>(t3 - t2).count());
        (void)t2;
    }
    CHECK(best_last <= 2.0 * best_first);
}

TEST_CASE("density integrates to one over a wide box (monte carlo)") {
    const auto entry = build_catalog_entry("NSGT");
    const long t = 1234;
    // 6-sigma bounding box around the active components.
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& cls : entry.scenario.classes()) {
        for (const auto& comp : cls.components) {
            const auto st = comp.params_at(t);
            const double sx = std::sqrt(st->params.covariance(0, 0));
            const double sy = std::sqrt(st->params.covariance(1, 1));
            lo_x = std::min(lo_x, st->params.center[0] - 6 * sx);
            hi_x = std::max(hi_x, st->params.center[0] + 6 * sx);
            lo_y = std::min(lo_y, st->params.center[1] - 6 * sy);
            hi_y = std::max(hi_y, st->params.center[1] + 6 * sy);
        }
    }
    ScenarioFrame frame(entry.scenario, t);
    Rng rng(21);
    const int n = 1000000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = lo_x + (hi_x - lo_x) * rng.uniform();
        const double y = lo_y + (hi_y - lo_y) * rng.uniform();
        acc += frame.density(vec2(x, y));
    }
    const double integral = acc / n * (hi_x - lo_x) * (hi_y - lo_y);
    CHECK(integral == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("posterior normalization holds at random times and points") {
    std::mt19937 gen(13);
    for (const auto& name : catalog_names()) {
        const auto entry = build_catalog_entry(name);
        std::uniform_int_distribution<long> t_dist(0, entry.scenario.length() - 1);
        std::uniform_real_distribution<double> x_dist(-40.0, 40.0);
        for (int i = 0; i < 1000; ++i) {
            const long t = t_dist(gen);
            Eigen::VectorXd x(entry.scenario.dimension());
            for (Eigen::Index f = 0; f < x.size(); ++f) x[f] = x_dist(gen);
            const auto post = entry.scenario.posterior(t, x);
            CHECK(post.sum() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(post.minCoeff() >= 0.0);
        }
    }
}
