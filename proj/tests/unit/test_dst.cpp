#include "dstrust/dst.hpp"

#include <array>
#include <cmath>
#include <random>

#include "doctest.h"

using namespace dstrust::dst;

namespace {

// Independent reference combination: generic power-set product over subset
// bitmasks (0=empty, 1={T}, 2={U}, 3=frame), kept free of the closed-form
// path used by the library.
std::array<double, 4> as_array(const MassFunction& m) {
    return {0.0, m.trusted, m.untrusted, m.uncertain};
}

MassFunction reference_combine(const MassFunction& a, const MassFunction& b) {
    const auto ma = as_array(a);
    const auto mb = as_array(b);
    std::array<double, 4> out{};
    for (unsigned p = 0; p < 4; ++p)
        for (unsigned q = 0; q < 4; ++q) out[p & q] += ma[p] * mb[q];
    const double norm = 1.0 - out[0];
    REQUIRE(norm > 0.0);
    return {out[1] / norm, out[2] / norm, out[3] / norm};
}

MassFunction random_mass(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u = uni(rng), v = uni(rng);
    if (u > v) std::swap(u, v);
    return {u, v - u, 1.0 - v};
}

bool close(const MassFunction& a, const MassFunction& b, double tol) {
    return std::abs(a.trusted - b.trusted) <= tol &&
           std::abs(a.untrusted - b.untrusted) <= tol &&
           std::abs(a.uncertain - b.uncertain) <= tol;
}

}  // namespace

TEST_CASE("dissimilarity ratio") {
    CHECK(dissimilarity(0.9, 0.1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(dissimilarity(0.6, 0.2) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.0, 0.3, 0.5, 1.0}) CHECK(dissimilarity(x, x) == 0.0);
}

TEST_CASE("mass from direct trust") {
    const auto high = direct_bpa(0.9, 0.5);
    CHECK(high.trusted == 0.9);
    CHECK(high.untrusted == 0.0);
    CHECK(high.uncertain == doctest::Approx(0.1).epsilon(1e-12));

    const auto boundary = direct_bpa(0.5, 0.5);
    CHECK(boundary.trusted == 0.5);
    CHECK(boundary.uncertain == 0.5);
    CHECK(boundary.untrusted == 0.0);

    const auto low = direct_bpa(0.2, 0.5);
    CHECK(low.trusted == 0.0);
    CHECK(low.untrusted == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(low.uncertain == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("mass from a recommendation") {
    const auto conflicted = indirect_bpa(0.1, 0.8, 0.5);
    CHECK(conflicted.trusted == 0.0);
    CHECK(conflicted.untrusted == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(conflicted.uncertain == 0.8);

    const auto agreeing = indirect_bpa(0.9, 0.0, 0.5);
    CHECK(agreeing.trusted == 1.0);
    CHECK(agreeing.untrusted == 0.0);
    CHECK(agreeing.uncertain == 0.0);

    const auto boundary = indirect_bpa(0.5, 0.3, 0.5);
    CHECK(boundary.trusted == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(boundary.untrusted == 0.0);
    CHECK(boundary.uncertain == 0.3);

    // Sum is exactly one by construction.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto m = indirect_bpa(uni(rng), uni(rng), 0.5);
        CHECK(m.trusted + m.untrusted + m.uncertain == 1.0);
    }
}

TEST_CASE("combination matches the worked golden value") {
    const MassFunction direct{0.9, 0.0, 0.1};
    const MassFunction rec{0.0, 0.2, 0.8};
    const auto fused = combine(direct, rec);
    // conflict 0.18, trust cell 0.72 -> 0.72/0.82
    CHECK(fused.trusted == doctest::Approx(0.87805).epsilon(1e-5));
    CHECK(fused.trusted == doctest::Approx(0.72 / 0.82).epsilon(1e-12));
    CHECK(fused.untrusted == doctest::Approx(0.02 / 0.82).epsilon(1e-12));
    CHECK(fused.uncertain == doctest::Approx(0.08 / 0.82).epsilon(1e-12));
    CHECK(fused.is_valid());
}

TEST_CASE("vacuous mass is a two-sided identity; total conflict throws") {
    const MassFunction m{0.3, 0.45, 0.25};
    CHECK(close(combine(m, MassFunction::vacuous()), m, 0.0));
    CHECK(close(combine(MassFunction::vacuous(), m), m, 0.0));
    CHECK_THROWS_AS(combine(MassFunction{1.0, 0.0, 0.0}, MassFunction{0.0, 1.0, 0.0}),
                    TotalConflictError);
}

TEST_CASE("belief and plausibility") {
    const MassFunction m{0.6, 0.1, 0.3};
    CHECK(belief(m, FrameSet::Trusted) == 0.6);
    CHECK(belief(MassFunction::vacuous(), FrameSet::Trusted) == 0.0);
    CHECK(belief(m, FrameSet::Either) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(plausibility(m, FrameSet::Trusted) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(plausibility(MassFunction::vacuous(), FrameSet::Trusted) == 1.0);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const auto r = random_mass(rng);
        CHECK(plausibility(r, FrameSet::Trusted) ==
              doctest::Approx(1.0 - belief(r, FrameSet::Untrusted)).epsilon(1e-12));
    }
}

TEST_CASE("combination algebra: commutative, associative, normalized") {
    std::mt19937_64 rng(23);
    int checked = 0;
    while (checked < 10000) {
        const auto a = random_mass(rng);
        const auto b = random_mass(rng);
        const auto c = random_mass(rng);
        const double kab = a.trusted * b.untrusted + a.untrusted * b.trusted;
        if (kab > 1.0 - 1e-6) continue;  // skip near-total conflict
        const auto ab = combine(a, b);
        const auto ba = combine(b, a);
        CHECK(close(ab, ba, 1e-12));
        CHECK(ab.is_valid(1e-9));
        CHECK(close(ab, reference_combine(a, b), 1e-9));

        const double k_ab_c = ab.trusted * c.untrusted + ab.untrusted * c.trusted;
        const double kbc = b.trusted * c.untrusted + b.untrusted * c.trusted;
        if (k_ab_c <= 1.0 - 1e-6 && kbc <= 1.0 - 1e-6) {
            const auto bc = combine(b, c);
            const double k_a_bc = a.trusted * bc.untrusted + a.untrusted * bc.trusted;
            if (k_a_bc <= 1.0 - 1e-6) {
                CHECK(close(combine(ab, c), combine(a, bc), 1e-9));
            }
        }
        ++checked;
    }
}

TEST_CASE("recommendation pipeline never reaches total conflict") {
    // Dense grid over direct trust and indirect trust.
    for (int di = 0; di <= 200; ++di) {
        for (int ii = 0; ii <= 200; ++ii) {
            const double d = di / 200.0;
            const double idt = ii / 200.0;
            const auto md = direct_bpa(d, 0.5);
            const auto mr = indirect_bpa(idt, dissimilarity(d, idt), 0.5);
            CHECK_NOTHROW(combine(md, mr));
        }
    }
}

TEST_CASE("fusion pipeline: worked example, direct-only, and two recommendations") {
    FusionInput one;
    one.direct_trust = 0.9;
    one.gamma = 0.5;
    one.recommendations = {{1, 0.1}};
    CHECK(fuse(one) == doctest::Approx(0.87805).epsilon(1e-5));

    FusionInput none;
    none.direct_trust = 0.9;
    none.gamma = 0.5;
    CHECK(fuse(none) == 0.9);

    FusionInput two;
    two.direct_trust = 0.9;
    two.gamma = 0.5;
    two.recommendations = {{1, 0.1}, {2, 0.1}};
    // Reference: fold the generic power-set combination twice.
    MassFunction expect = direct_bpa(0.9, 0.5);
    const auto rec = indirect_bpa(0.1, dissimilarity(0.9, 0.1), 0.5);
    expect = reference_combine(expect, rec);
    expect = reference_combine(expect, rec);
    CHECK(fuse(two) == doctest::Approx(expect.trusted).epsilon(1e-12));
    CHECK(fuse(two) == doctest::Approx(0.8520710059171598).epsilon(1e-12));  // 144/169
}

TEST_CASE("fusion is order-independent over recommendation permutations") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        FusionInput in;
        in.direct_trust = uni(rng);
        in.gamma = 0.5;
        const int n = 1 + static_cast<int>(uni(rng) * 6);
        for (int i = 0; i < n; ++i) in.recommendations.push_back({i, uni(rng)});
        const double base = fuse(in);
        for (int shuffle = 0; shuffle < 3; ++shuffle) {
            std::shuffle(in.recommendations.begin(), in.recommendations.end(), rng);
            CHECK(fuse(in) == doctest::Approx(base).epsilon(1e-9));
        }
    }
}

TEST_CASE("pignistic scalar splits uncertainty") {
    FusionInput in;
    in.direct_trust = 0.9;
    in.gamma = 0.5;
    CHECK(fuse(in, TrustScalar::Pignistic) == doctest::Approx(0.95).epsilon(1e-12));
}

TEST_CASE("combination counter tracks pairwise operations") {
    reset_combination_count();
    FusionInput in;
    in.direct_trust = 0.8;
    in.gamma = 0.5;
    for (int i = 0; i < 5; ++i) in.recommendations.push_back({i, 0.7});
    fuse(in);
    CHECK(combination_count() == 5);
    reset_combination_count();
    CHECK(combination_count() == 0);
}
