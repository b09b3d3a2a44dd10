#include <cmath>
#include <vector>

#include <doctest.h>

#include "btv/pbin.hpp"
#include "btv/verify.hpp"
#include "oracle.hpp"

using namespace btv;

namespace {

std::vector<double> sample_box(int n, double bound, SplitMix64& rng) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& e : v) e = rng.uniform(bound);
    return v;
}

}  // namespace

TEST_CASE("pmf known values") {
    const std::vector<double> fair = pmf(PoissonBinomial(ParamVec({0.5, 0.5})));
    REQUIRE(fair.size() == 3);
    CHECK(fair[0] == 0.25);
    CHECK(fair[1] == 0.5);
    CHECK(fair[2] == 0.25);

    const std::vector<double> two = pmf(PoissonBinomial(ParamVec({0.1, 0.2})));
    CHECK(two[0] == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(two[1] == doctest::Approx(0.26).epsilon(1e-15));
    CHECK(two[2] == doctest::Approx(0.02).epsilon(1e-15));

    const std::vector<double> three =
        pmf(PoissonBinomial(ParamVec({0.25, 0.25, 0.25})));
    CHECK(three[1] == doctest::Approx(0.421875).epsilon(1e-15));

    const std::vector<double> degenerate =
        pmf(PoissonBinomial(ParamVec({0.0, 1.0, 0.0})));
    CHECK(degenerate[0] == 0.0);
    CHECK(degenerate[1] == 1.0);
    CHECK(degenerate[2] == 0.0);
    CHECK(degenerate[3] == 0.0);
}

TEST_CASE("pmf matches the subset-enumeration oracle and sums to one") {
    SplitMix64 rng(909);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(10.0));
        std::vector<double> r = sample_box(n, 1.0, rng);
        if (trial % 5 == 0) r[0] = 1.0;
        if (trial % 7 == 0) r[static_cast<std::size_t>(n - 1)] = 0.0;
        const std::vector<double> f = pmf(PoissonBinomial(ParamVec(r)));
        const std::vector<double> want = oracle::pmf(r);
        REQUIRE(f.size() == want.size());
        double total = 0.0;
        for (std::size_t m = 0; m < f.size(); ++m) {
            CHECK(std::abs(f[m] - want[m]) <= 1e-12);
            total += f[m];
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("odds construction") {
    const OddsVec a = OddsVec::from_probabilities(ParamVec({0.5, 0.2}));
    CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(a.sum() == doctest::Approx(1.25).epsilon(1e-15));
    CHECK_THROWS_AS(OddsVec::from_probabilities(ParamVec({0.5, 1.0})),
                    OddsUndefined);
    // a_i >= r_i always.
    SplitMix64 rng(111);
    const std::vector<double> r = sample_box(8, 0.999, rng);
    const OddsVec odds = OddsVec::from_probabilities(ParamVec(r));
    for (int i = 0; i < odds.n(); ++i) CHECK(odds[i] >= r[static_cast<std::size_t>(i)]);
}

TEST_CASE("elementary_symmetric known values and oracle agreement") {
    const OddsVec a(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(elementary_symmetric(a, 2) == doctest::Approx(11.0).epsilon(1e-15));
    CHECK(elementary_symmetric(a, 0) == 1.0);
    CHECK(elementary_symmetric(OddsVec(std::vector<double>{0.7}), 1) == 0.7);
    CHECK_THROWS_AS(elementary_symmetric(a, 4), InvalidParameter);
    CHECK_THROWS_AS(elementary_symmetric(a, -1), InvalidParameter);

    SplitMix64 rng(222);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(9.0));
        const std::vector<double> v = sample_box(n, 2.0, rng);
        const OddsVec odds(v);
        for (int m = 0; m <= n; ++m) {
            const double want = oracle::elementary_symmetric(v, m);
            CHECK(std::abs(elementary_symmetric(odds, m) - want) <=
                  1e-12 * std::max(1.0, want));
        }
    }
}

TEST_CASE("pmf factorizes through elementary symmetric polynomials") {
    SplitMix64 rng(333);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(10.0));
        const std::vector<double> r = sample_box(n, 0.95, rng);
        const std::vector<double> f = pmf(PoissonBinomial(ParamVec(r)));
        const OddsVec a = OddsVec::from_probabilities(ParamVec(r));
        for (int m = 0; m <= n; ++m) {
            const double factored = f[0] * elementary_symmetric(a, m);
            const double fm = f[static_cast<std::size_t>(m)];
            CHECK(std::abs(fm - factored) <= 1e-12 * std::max(1.0, fm));
        }
    }
}

TEST_CASE("pmf_is_nonincreasing") {
    const MonotonicityCheck ok =
        pmf_is_nonincreasing(PoissonBinomial(ParamVec({0.1, 0.1, 0.1})));
    CHECK(ok.nonincreasing);
    CHECK(ok.first_violation == -1);

    CHECK(pmf_is_nonincreasing(PoissonBinomial(ParamVec({0.0, 0.0, 0.0})))
              .nonincreasing);

    CHECK_THROWS_AS(pmf_is_nonincreasing(PoissonBinomial(ParamVec({0.4, 0.4}))),
                    OddsConstraintViolated);
    CHECK_THROWS_AS(pmf_is_nonincreasing(PoissonBinomial(ParamVec({1.0}))),
                    OddsUndefined);
}

TEST_CASE("ratio bound under the odds-sum hypothesis") {
    SplitMix64 rng(444);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(12.0));
        // Cap entries so the odds sum stays below 1.
        const double cap = 1.0 / (2.0 * n);
        const std::vector<double> r = sample_box(n, cap, rng);
        const OddsVec a = OddsVec::from_probabilities(ParamVec(r));
        if (a.sum() > 1.0) continue;
        const std::vector<double> f = pmf(PoissonBinomial(ParamVec(r)));
        CHECK(pmf_is_nonincreasing(PoissonBinomial(ParamVec(r))).nonincreasing);
        for (std::size_t m = 1; m < f.size(); ++m) {
            if (f[m - 1] == 0.0) continue;
            CHECK(f[m] / f[m - 1] <=
                  a.sum() / static_cast<double>(m) + 1e-12);
        }
    }
}

TEST_CASE("pmf_extremal_bound values and hypothesis checks") {
    CHECK(pmf_extremal_bound(3, 0.25, 1) == doctest::Approx(0.421875).epsilon(1e-15));
    CHECK(pmf_extremal_bound(2, 1.0 / 3.0, 2) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(pmf_extremal_bound(5, 0.0, 2) == 0.0);
    CHECK_THROWS_AS(pmf_extremal_bound(3, 0.26, 1), LambdaTooLarge);
    CHECK_THROWS_AS(pmf_extremal_bound(3, 0.25, 0), InvalidParameter);
    CHECK_THROWS_AS(pmf_extremal_bound(3, 0.25, 4), InvalidParameter);
}

TEST_CASE("extremal bound dominates random pmfs in the box") {
    SplitMix64 rng(555);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(10.0));
        const double lambda = rng.uniform(1.0 / (n + 1.0));
        const std::vector<double> r = sample_box(n, lambda, rng);
        const std::vector<double> f = pmf(PoissonBinomial(ParamVec(r)));
        for (int m = 1; m <= n; ++m) {
            CHECK(f[static_cast<std::size_t>(m)] <=
                  pmf_extremal_bound(n, lambda, m) + 1e-12);
        }
    }
}

TEST_CASE("pmf_coordinate_derivative known values") {
    const PoissonBinomial pb(ParamVec({0.1, 0.2}));
    CHECK(pmf_coordinate_derivative(pb, 0, 1) ==
          doctest::Approx(0.6).epsilon(1e-15));
    CHECK(pmf_coordinate_derivative(pb, 0, 0) ==
          doctest::Approx(-0.8).epsilon(1e-15));
    CHECK(pmf_coordinate_derivative(PoissonBinomial(ParamVec({0.3})), 0, 1) ==
          1.0);
    CHECK_THROWS_AS(pmf_coordinate_derivative(pb, 2, 1), InvalidParameter);
    CHECK_THROWS_AS(pmf_coordinate_derivative(pb, 0, 3), InvalidParameter);
}

TEST_CASE("derivative matches central differences") {
    SplitMix64 rng(666);
    const double step = 1e-6;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(8.0));
        std::vector<double> r(static_cast<std::size_t>(n));
        for (double& e : r) e = 0.1 + rng.uniform(0.8);
        const PoissonBinomial pb{ParamVec(r)};
        const int j = static_cast<int>(rng.uniform(double(n)));
        std::vector<double> up = r;
        std::vector<double> down = r;
        up[static_cast<std::size_t>(j)] += step;
        down[static_cast<std::size_t>(j)] -= step;
        const std::vector<double> fu = pmf(PoissonBinomial(ParamVec(up)));
        const std::vector<double> fd = pmf(PoissonBinomial(ParamVec(down)));
        for (int m = 0; m <= n; ++m) {
            const double numeric =
                (fu[static_cast<std::size_t>(m)] - fd[static_cast<std::size_t>(m)]) /
                (2.0 * step);
            CHECK(std::abs(pmf_coordinate_derivative(pb, j, m) - numeric) <= 1e-8);
        }
    }
}

TEST_CASE("pmf is coordinatewise nondecreasing under the lambda cap") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform(9.0));
        const double lambda = rng.uniform(1.0 / (n + 1.0));
        std::vector<double> r = sample_box(n, lambda, rng);
        const int j = static_cast<int>(rng.uniform(double(n)));
        std::vector<double> bumped = r;
        bumped[static_cast<std::size_t>(j)] =
            r[static_cast<std::size_t>(j)] +
            rng.uniform(lambda - r[static_cast<std::size_t>(j)]);
        const std::vector<double> before = pmf(PoissonBinomial(ParamVec(r)));
        const std::vector<double> after = pmf(PoissonBinomial(ParamVec(bumped)));
        for (int m = 1; m <= n; ++m) {
            CHECK(after[static_cast<std::size_t>(m)] >=
                  before[static_cast<std::size_t>(m)] - 1e-12);
        }
    }
}

TEST_CASE("binomial_coefficient") {
    CHECK(binomial_coefficient(6, 2) == 15.0);
    CHECK(binomial_coefficient(5, 0) == 1.0);
    CHECK(binomial_coefficient(5, 5) == 1.0);
    CHECK(std::abs(binomial_coefficient(64, 32) - 1832624140942590534.0) <=
          1e-12 * 1832624140942590534.0);
    CHECK_THROWS_AS(binomial_coefficient(4, 5), InvalidParameter);
    CHECK_THROWS_AS(binomial_coefficient(4, -1), InvalidParameter);
}
