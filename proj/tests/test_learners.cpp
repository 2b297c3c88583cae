#include <doctest.h>

#include <Eigen/Core>
#include <random>

#include "driftbench/catalog.hpp"
#include "driftbench/dwm.hpp"
#include "driftbench/errors.hpp"
#include "driftbench/evaluation.hpp"
#include "driftbench/naive_bayes.hpp"
#include "driftbench/sgd_linear.hpp"
#include "driftbench/window_knn.hpp"

using namespace driftbench;

namespace {
Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}
}  // namespace

TEST_CASE("naive bayes answers class 0 before any training") {
    NaiveBayes nb;
    CHECK(nb.predict(vec2(3, 4)) == 0);
}

TEST_CASE("naive bayes trained on one class predicts it everywhere") {
    NaiveBayes nb;
    nb.train(vec2(0, 0), 0);
    CHECK(nb.predict(vec2(100, 100)) == 0);
}

TEST_CASE("naive bayes separates two far apart classes") {
    NaiveBayes nb;
    std::mt19937 gen(5);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        nb.train(vec2(noise(gen), noise(gen)), 0);
        nb.train(vec2(20 + noise(gen), 20 + noise(gen)), 1);
    }
    CHECK(nb.predict(vec2(0, 0)) == 0);
    CHECK(nb.predict(vec2(20, 20)) == 1);
}

TEST_CASE("naive bayes survives zero-variance features") {
    NaiveBayes nb;
    nb.train(vec2(1, 1), 0);
    nb.train(vec2(1, 1), 0);
    nb.train(vec2(2, 2), 1);
    nb.train(vec2(2, 2), 1);
    CHECK(nb.predict(vec2(1, 1)) == 0);
    CHECK(nb.predict(vec2(2, 2)) == 1);
}

TEST_CASE("sgd update rule: single example from zero weights") {
    // Margin starts at 0 < 1, so w = eta*y*x and b = eta*y; the first label
    // seen maps to the -1 side.
    SgdLinear sgd(0.01, 0.0);
    sgd.train(vec2(1, 0), 3);
    CHECK(sgd.weights()[0] == doctest::Approx(-0.01));
    CHECK(sgd.weights()[1] == doctest::Approx(0.0));
    CHECK(sgd.bias() == doctest::Approx(-0.01));

    // The +1 side gets the mirrored update on top of the current state.
    SgdLinear fresh(0.01, 0.0);
    fresh.train(vec2(-5, 0), 0);  // w = (0.05, 0), b = -0.01
    fresh.train(vec2(1, 0), 1);   // margin -0.06 < 1: w += 0.01*(1,0), b += 0.01
    CHECK(fresh.weights()[0] == doctest::Approx(0.05 + 0.01));
    CHECK(fresh.bias() == doctest::Approx(0.0));
}

TEST_CASE("sgd converges on a linearly separable stream") {
    SgdLinear sgd;  // defaults
    std::mt19937 gen(11);
    std::normal_distribution<double> noise(0.0, 0.5);
    for (int i = 0; i < 3000; ++i) {
        sgd.train(vec2(-3 + noise(gen), noise(gen)), 0);
        sgd.train(vec2(3 + noise(gen), noise(gen)), 1);
    }
    int errors = 0;
    for (int i = 0; i < 200; ++i) {
        errors += sgd.predict(vec2(-3 + noise(gen), noise(gen))) != 0;
        errors += sgd.predict(vec2(3 + noise(gen), noise(gen))) != 1;
    }
    CHECK(errors == 0);
}

TEST_CASE("sgd rejects a third class") {
    SgdLinear sgd;
    sgd.train(vec2(0, 0), 0);
    sgd.train(vec2(1, 1), 1);
    CHECK_THROWS_AS(sgd.train(vec2(2, 2), 2), UnsupportedConfigurationError);
}

TEST_CASE("1-nn picks the nearest stored pattern") {
    WindowKnn knn(10, 1);
    knn.train(vec2(0, 0), 0);
    knn.train(vec2(10, 10), 1);
    CHECK(knn.predict(vec2(1, 1)) == 0);
    CHECK(knn.predict(vec2(9, 9)) == 1);
}

TEST_CASE("the window evicts its oldest pattern") {
    WindowKnn knn(2, 1);
    knn.train(vec2(0, 0), 0);
    knn.train(vec2(5, 5), 1);
    knn.train(vec2(10, 10), 1);  // evicts (0,0)
    CHECK(knn.stored() == 2);
    CHECK(knn.predict(vec2(0, 0)) == 1);
}

TEST_CASE("knn with empty window answers class 0") {
    WindowKnn knn(5, 1);
    CHECK(knn.predict(vec2(1, 2)) == 0);
}

TEST_CASE("k=3 majority vote, ties to the nearest") {
    WindowKnn knn(10, 3);
    knn.train(vec2(0, 0), 0);
    knn.train(vec2(0.6, 0), 1);
    knn.train(vec2(0.7, 0), 1);
    CHECK(knn.predict(vec2(0.1, 0)) == 1);  // votes 2:1 for class 1
    WindowKnn pair(10, 2);
    pair.train(vec2(-1, 0), 0);
    pair.train(vec2(2, 0), 1);
    // 1:1 vote; class 0's representative is nearer to the query.
    CHECK(pair.predict(vec2(0, 0)) == 0);
}

TEST_CASE("knn memory stays bounded by the window size") {
    WindowKnn knn(100, 1);
    for (int i = 0; i < 1000; ++i) knn.train(vec2(i, i), i % 2);
    CHECK(knn.stored() == 100);
}

TEST_CASE("dwm applies beta to wrong experts and adds one on a wrong vote") {
    Dwm dwm(0.5, 0.01, 1);  // update every step
    for (int i = 0; i < 5; ++i) dwm.train(vec2(0, 0), 0);
    CHECK(dwm.expert_count() == 1);
    // Expert 0 now predicts 0 here; this pattern makes the vote wrong, so a
    // fresh expert joins (and trains on it, learning only label 1).
    dwm.train(vec2(0, 0), 1);
    REQUIRE(dwm.expert_count() == 2);
    // Now expert 0 is wrong and expert 1 right: one beta hit, max stays 1.
    dwm.train(vec2(0, 0), 1);
    CHECK(dwm.expert_weight(0) == doctest::Approx(0.5));
    CHECK(dwm.expert_weight(1) == doctest::Approx(1.0));
}

TEST_CASE("dwm with a consistently right expert never grows") {
    Dwm dwm(0.5, 0.01, 5);
    for (int i = 0; i < 500; ++i) {
        dwm.train(vec2(0, 0), 0);
    }
    CHECK(dwm.expert_count() == 1);
    CHECK(dwm.expert_weight(0) == doctest::Approx(1.0));
}

TEST_CASE("final errors on the global-translation benchmark stay in their bands") {
    const auto entry = build_catalog_entry("NSGT");
    double sgd_sum = 0.0;
    double dwm_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        sgd_sum += prequential_run(entry.scenario, LearnerConfig{"sgd", "sgd_linear", {}}, seed)
                       .final_error();
        dwm_sum += prequential_run(entry.scenario, LearnerConfig{"dwm", "dwm", {}}, seed)
                       .final_error();
    }
    const double sgd_pct = sgd_sum / 10.0 * 100.0;
    const double dwm_pct = dwm_sum / 10.0 * 100.0;
    CHECK(sgd_pct >= 6.5);
    CHECK(sgd_pct <= 9.0);
    CHECK(dwm_pct >= 3.7);
    CHECK(dwm_pct <= 5.5);
}

TEST_CASE("dwm weights stay in (0, 1] and weak experts get pruned") {
    Dwm dwm(0.5, 0.01, 2);
    std::mt19937 gen(23);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const int label = i % 2;
        const double shift = (i < 1000) == (label == 0) ? -3.0 : 3.0;
        dwm.train(vec2(shift + noise(gen), noise(gen)), label);
        for (int e = 0; e < dwm.expert_count(); ++e) {
            CHECK(dwm.expert_weight(e) > 0.0);
            CHECK(dwm.expert_weight(e) <= 1.0);
        }
    }
    CHECK(dwm.expert_count() < 200);
}
