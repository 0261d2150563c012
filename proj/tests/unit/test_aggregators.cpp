#include "dstrust/aggregators.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

using namespace dstrust::agg;

TEST_CASE("linear pooling") {
    const std::vector<double> same(7, 0.42);
    CHECK(*linear_pool(same) == doctest::Approx(0.42).epsilon(1e-12));

    const std::vector<double> two{0.1, 0.9};
    const std::vector<double> w{0.5, 0.5};
    CHECK(*linear_pool(two, w) == doctest::Approx(0.5).epsilon(1e-12));

    const std::vector<double> twenty(20, 0.1);
    CHECK(*linear_pool(twenty) == doctest::Approx(0.1).epsilon(1e-12));

    CHECK_FALSE(linear_pool({}).has_value());

    // Convexity: pooled value stays inside [min, max] of the inputs.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int t = 0; t < 500; ++t) {
        std::vector<double> vals, ws;
        const int n = 1 + static_cast<int>(uni(rng) * 8);
        for (int i = 0; i < n; ++i) {
            vals.push_back(uni(rng));
            ws.push_back(uni(rng) + 1e-3);
        }
        const double pooled = *linear_pool(vals, ws);
        CHECK(pooled >= *std::min_element(vals.begin(), vals.end()) - 1e-12);
        CHECK(pooled <= *std::max_element(vals.begin(), vals.end()) + 1e-12);
    }
}

TEST_CASE("linear combination with direct trust") {
    const LinearPoolConfig cfg;
    CHECK(linear_combined(0.9, 0.1, cfg) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(linear_combined(0.1, 0.9, cfg) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.0, 0.25, 0.7, 1.0})
        CHECK(linear_combined(x, x, cfg) == doctest::Approx(x).epsilon(1e-12));

    LinearPoolConfig bad{0.7, 0.5};
    CHECK_THROWS_AS(linear_combined(0.5, 0.5, bad), std::invalid_argument);
}

TEST_CASE("probability concatenation") {
    for (double p : {0.0, 0.3, 0.8, 1.0}) {
        CHECK(concat_prob(1.0, p) == doctest::Approx(p).epsilon(1e-12));
        CHECK(concat_prob(0.5, p) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(concat_prob(0.9, 0.8) == doctest::Approx(0.74).epsilon(1e-12));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const double p = uni(rng), q = uni(rng);
        CHECK(concat_prob(p, q) == doctest::Approx(concat_prob(q, p)).epsilon(1e-15));
    }
}

TEST_CASE("Beta evidence merge and expectation") {
    const std::vector<BetaEvidence> pair{{1, 1}, {1, 1}};
    const auto merged = multipath_merge(pair);
    CHECK(merged->alpha == 2.0);
    CHECK(merged->beta == 2.0);

    const std::vector<BetaEvidence> single{{3.5, 1.25}};
    CHECK(multipath_merge(single)->alpha == 3.5);
    CHECK(multipath_merge(single)->beta == 1.25);

    const std::vector<BetaEvidence> sym{{8, 2}, {2, 8}};
    const auto m = multipath_merge(sym);
    CHECK(m->alpha == 10.0);
    CHECK(m->beta == 10.0);
    CHECK(beta_expectation(*m) == 0.5);

    CHECK_FALSE(multipath_merge({}).has_value());

    CHECK(beta_expectation({1, 1}) == 0.5);
    CHECK(beta_expectation({9, 1}) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(beta_expectation({0.5, 1.5}) == doctest::Approx(0.25).epsilon(1e-12));

    // Merge order cannot matter: sums commute.
    const std::vector<BetaEvidence> fwd{{1, 2}, {3, 4}, {5, 6}};
    const std::vector<BetaEvidence> rev{{5, 6}, {3, 4}, {1, 2}};
    CHECK(multipath_merge(fwd)->alpha == multipath_merge(rev)->alpha);
    CHECK(multipath_merge(fwd)->beta == multipath_merge(rev)->beta);
}

TEST_CASE("signed entropy trust map") {
    CHECK(entropy_trust_signed(0.5) == 0.0);
    CHECK(entropy_trust_signed(1.0) == 1.0);
    CHECK(entropy_trust_signed(0.0) == -1.0);
    // High-precision oracle: 1 - H_b(0.9) = 0.53100440641071877874...
    CHECK(entropy_trust_signed(0.9) == doctest::Approx(0.5310044064107189).epsilon(1e-9));
}

TEST_CASE("opinion expectation") {
    CHECK(opinion_expectation({1, 0, 0, 0.3}) == 1.0);
    CHECK(opinion_expectation({0, 0, 1, 0.5}) == 0.5);
    CHECK(opinion_expectation({0.8, 0.1, 0.1, 0.5}) == doctest::Approx(0.85).epsilon(1e-12));
    CHECK_THROWS_AS(opinion_expectation({0.9, 0.9, 0.1, 0.5}), std::invalid_argument);
}

TEST_CASE("discounting through a recommender") {
    const Opinion target{0.6, 0.3, 0.1, 0.5};

    const auto via_full_belief = discount({1, 0, 0, 0.5}, target);
    CHECK(via_full_belief.b == doctest::Approx(target.b).epsilon(1e-12));
    CHECK(via_full_belief.d == doctest::Approx(target.d).epsilon(1e-12));
    CHECK(via_full_belief.u == doctest::Approx(target.u).epsilon(1e-12));
    CHECK(via_full_belief.a == target.a);

    const auto via_distrust = discount({0, 1, 0, 0.5}, target);
    CHECK(via_distrust.b == 0.0);
    CHECK(via_distrust.d == 0.0);
    CHECK(via_distrust.u == 1.0);
    CHECK(via_distrust.a == target.a);

    const auto derived = discount({0.8, 0.1, 0.1, 0.5}, target);
    CHECK(derived.b == doctest::Approx(0.48).epsilon(1e-12));
    CHECK(derived.d == doctest::Approx(0.24).epsilon(1e-12));
    CHECK(derived.u == doctest::Approx(0.28).epsilon(1e-12));
    CHECK(derived.is_valid());
}

TEST_CASE("consensus of parallel opinions") {
    const Opinion o1{0.7, 0.1, 0.2, 0.5};
    const Opinion vac{0, 0, 1, 0.5};
    const auto kept = consensus(o1, vac);
    CHECK(kept.b == doctest::Approx(o1.b).epsilon(1e-12));
    CHECK(kept.d == doctest::Approx(o1.d).epsilon(1e-12));
    CHECK(kept.u == doctest::Approx(o1.u).epsilon(1e-12));

    const Opinion o2{0.2, 0.6, 0.2, 0.5};
    const auto ab = consensus(o1, o2);
    const auto ba = consensus(o2, o1);
    CHECK(ab.b == doctest::Approx(ba.b).epsilon(1e-12));
    CHECK(ab.d == doctest::Approx(ba.d).epsilon(1e-12));
    CHECK(ab.u == doctest::Approx(ba.u).epsilon(1e-12));

    CHECK(ab.b == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ab.d == doctest::Approx(0.14 / 0.36).epsilon(1e-12));
    CHECK(ab.u == doctest::Approx(0.04 / 0.36).epsilon(1e-12));
    CHECK(ab.is_valid());

    CHECK_THROWS_AS(consensus({1, 0, 0, 0.5}, {0, 1, 0, 0.5}), DogmaticConsensusError);
}

TEST_CASE("discount and consensus outputs stay valid opinions") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto rand_opinion = [&] {
        double u = uni(rng), v = uni(rng);
        if (u > v) std::swap(u, v);
        return Opinion{u, v - u, 1.0 - v, uni(rng)};
    };
    for (int t = 0; t < 3000; ++t) {
        const auto a = rand_opinion();
        const auto b = rand_opinion();
        CHECK(discount(a, b).is_valid(1e-9));
        if (a.u + b.u - a.u * b.u > 1e-9) CHECK(consensus(a, b).is_valid(1e-9));
    }
}

TEST_CASE("logistic trust map") {
    const std::vector<double> beta{1.0, -2.0};
    const std::vector<double> zero{0.0, 0.0};
    CHECK(logit_map(beta, zero) == 0.5);

    const std::vector<double> one{1.0};
    const std::vector<double> ln3{std::log(3.0)};
    CHECK(logit_map(one, ln3) == doctest::Approx(0.75).epsilon(1e-12));

    double prev = -1.0;
    for (double z = -8.0; z <= 8.0; z += 0.25) {
        const std::vector<double> x{z};
        const double v = logit_map(one, x);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(logit_map(one, {std::vector<double>{40.0}}) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(logit_map(beta, one), std::invalid_argument);
}
