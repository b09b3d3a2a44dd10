#include <cmath>
#include <vector>

#include <doctest.h>

#include "btv/enumerate.hpp"
#include "btv/verify.hpp"
#include "oracle.hpp"

using namespace btv;

namespace {

ParamPair make_pair(std::vector<double> p, std::vector<double> q) {
    return ParamPair(ParamVec(std::move(p)), ParamVec(std::move(q)));
}

ParamPair random_pair(int n, SplitMix64& rng, double bound = 1.0) {
    std::vector<double> p(static_cast<std::size_t>(n));
    std::vector<double> q(static_cast<std::size_t>(n));
    for (double& e : p) e = rng.uniform(bound);
    for (double& e : q) e = rng.uniform(bound);
    return make_pair(std::move(p), std::move(q));
}

}  // namespace

TEST_CASE("slice_delta known values") {
    const ParamPair swap = make_pair({0.1, 0.2}, {0.2, 0.1});
    CHECK(slice_delta(swap, SubsetIndex(0b01, 2)) ==
          doctest::Approx(-0.10).epsilon(1e-14));
    CHECK(slice_delta(make_pair({0.3, 0.3}, {0.3, 0.3}), SubsetIndex(0b10, 2)) ==
          0.0);
    CHECK(slice_delta(make_pair({1.0, 1.0}, {0.5, 0.5}), SubsetIndex(0b11, 2)) ==
          0.75);
    CHECK_THROWS_AS(slice_delta(swap, SubsetIndex(1, 3)), DimensionMismatch);
}

TEST_CASE("slice_discrepancy known values") {
    const ParamPair swap = make_pair({0.1, 0.2}, {0.2, 0.1});
    CHECK(slice_discrepancy(swap, 1) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(slice_discrepancy(swap, 0) == 0.0);
    CHECK(slice_discrepancy(make_pair({0.7, 0.7}, {0.7, 0.7}), 2) == 0.0);
    CHECK_THROWS_AS(slice_discrepancy(swap, -1), InvalidParameter);
    CHECK_THROWS_AS(slice_discrepancy(swap, 3), InvalidParameter);
}

TEST_CASE("slice_discrepancy matches the brute-force oracle") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(9.0));
        const ParamPair pair = random_pair(n, rng);
        for (int k = 0; k <= n; ++k) {
            const double got = slice_discrepancy(pair, k);
            const double want =
                oracle::slice(pair.p().values(), pair.q().values(), k);
            CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, want));
        }
    }
}

TEST_CASE("tv_exact known values") {
    CHECK(tv_exact(make_pair({0.3}, {0.5})) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(tv_exact(make_pair({1.0, 1.0}, {0.5, 0.5})) == 0.75);
    CHECK(tv_exact(make_pair({0.1, 0.2}, {0.2, 0.1})) ==
          doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("tv_exact matches the brute-force oracle") {
    SplitMix64 rng(505);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(10.0));
        const ParamPair pair = random_pair(n, rng);
        const double got = tv_exact(pair);
        const double want = oracle::tv(pair.p().values(), pair.q().values());
        CHECK(std::abs(got - want) <= 1e-14 * std::max(1.0, want));
    }
}

TEST_CASE("tv_exact symmetry, reflection, and l1 domination") {
    SplitMix64 rng(606);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(8.0));
        const ParamPair pair = random_pair(n, rng);
        const ParamPair swapped(pair.q(), pair.p());
        std::vector<double> rp = pair.p().values();
        std::vector<double> rq = pair.q().values();
        for (double& e : rp) e = 1.0 - e;
        for (double& e : rq) e = 1.0 - e;
        const double tv = tv_exact(pair);
        CHECK(tv_exact(swapped) == tv);
        CHECK(std::abs(tv_exact(make_pair(rp, rq)) - tv) <= 1e-14);
        CHECK(tv <= l1_distance(pair) + 1e-12);
    }
}

TEST_CASE("full_slice_report known values") {
    const SliceReport report = full_slice_report(make_pair({0.1, 0.2}, {0.2, 0.1}));
    REQUIRE(report.n == 2);
    REQUIRE(report.delta.size() == 3);
    CHECK(report.delta[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(report.delta[1] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(report.delta[2] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(report.tv == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(report.identity_residual <= 1e-15);

    const SliceReport zero = full_slice_report(make_pair({0.4, 0.6}, {0.4, 0.6}));
    for (double d : zero.delta) CHECK(d == 0.0);
    CHECK(zero.tv == 0.0);
}

TEST_CASE("slice identity holds on random pairs") {
    SplitMix64 rng(707);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(12.0));
        const ParamPair pair = random_pair(n, rng);
        const SliceReport report = full_slice_report(pair);
        CHECK(report.identity_residual <= 1e-12 * std::max(1.0, 2.0 * report.tv));
        for (int k = 0; k <= n; ++k) {
            CHECK(report.delta[static_cast<std::size_t>(k)] >= 0.0);
            const double direct = slice_discrepancy(pair, k);
            CHECK(std::abs(report.delta[static_cast<std::size_t>(k)] - direct) <=
                  1e-13 * std::max(1.0, direct));
        }
    }
}

TEST_CASE("enumeration limit is enforced") {
    EnumerationConfig tight;
    tight.limit = 5;
    const ParamPair six = make_pair(std::vector<double>(6, 0.1),
                                    std::vector<double>(6, 0.2));
    CHECK_THROWS_AS(tv_exact(six, tight), DimensionTooLarge);
    CHECK_THROWS_AS(full_slice_report(six, tight), DimensionTooLarge);
    tight.limit = 6;
    CHECK(tv_exact(six, tight) == doctest::Approx(tv_exact(six)).epsilon(1e-15));
}

TEST_CASE("results are bit-identical across worker counts") {
    SplitMix64 rng(808);
    const ParamPair pair = random_pair(17, rng);
    EnumerationConfig one;
    one.workers = 1;
    EnumerationConfig two;
    two.workers = 2;
    EnumerationConfig eight;
    eight.workers = 8;
    const double tv1 = tv_exact(pair, one);
    CHECK(tv_exact(pair, two) == tv1);
    CHECK(tv_exact(pair, eight) == tv1);
    const SliceReport r1 = full_slice_report(pair, one);
    const SliceReport r8 = full_slice_report(pair, eight);
    CHECK(r1.tv == r8.tv);
    for (std::size_t k = 0; k < r1.delta.size(); ++k) {
        CHECK(r1.delta[k] == r8.delta[k]);
    }
}

TEST_CASE("default enumeration limit is sane") {
    CHECK(default_enumeration_limit() >= 1);
    CHECK(default_enumeration_limit() <= 62);
}
