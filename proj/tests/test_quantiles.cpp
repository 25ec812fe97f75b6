#include <cmath>
#include <vector>

#include "doctest.h"
#include "mcpot/quantiles.hpp"

using namespace mcpot;

namespace {

MarkovModel model_of(double u, double lambda, double sigma, double xi, double theta) {
    MarkovModel m;
    m.marginal = GpdParams{u, lambda, sigma, xi};
    m.dep = DependenceModel::logistic(0.5);
    m.theta = theta;
    return m;
}

// Independent oracle: solve F(y)^(n*theta) = 1 - 1/T by bisection.
double invert_annual_max(const GpdParams& p, double theta, double T, double n) {
    const double target = std::log1p(-1.0 / T) / (n * theta);  // log F(y)
    double lo = p.u, hi = p.u + p.sigma;
    auto logF = [&](double y) { return std::log(gpd_cdf(y, p)); };
    int grow = 0;
    while (logF(hi) < target) {
        hi = p.u + (hi - p.u) * 2.0;
        REQUIRE(++grow < 400);
    }
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (logF(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("markov return level matches the numeric inversion oracle") {
    const std::vector<double> thetas{0.2, 0.4, 1.0};
    const std::vector<double> xis{-0.2, 0.0, 0.1, 0.4};
    const std::vector<double> lambdas{0.02, 0.1, 0.5};
    const std::vector<double> Ts{2, 20, 100};
    for (double theta : thetas)
        for (double xi : xis)
            for (double lambda : lambdas)
                for (double T : Ts) {
                    const MarkovModel m = model_of(10.0, lambda, 2.0, xi, theta);
                    const ReturnSpec spec{T, 365.25};
                    const double closed = return_level_markov(m, spec);
                    const double oracle = invert_annual_max(m.marginal, theta, T, 365.25);
                    CHECK(closed == doctest::Approx(oracle).epsilon(1e-9));
                }
}

TEST_CASE("markov return level special structure") {
    // lambda = 1, n = 1, theta = 1: exactly u + sigma log T in the xi=0 limit
    const MarkovModel unit = model_of(0.0, 1.0, 1.0, 0.0, 1.0);
    for (double T : {10.0, 100.0, 1e6})
        CHECK(return_level_markov(unit, ReturnSpec{T, 1.0}) ==
              doctest::Approx(std::log(T)).epsilon(1e-12));

    // strictly increasing in T
    const MarkovModel m = model_of(5.0, 0.1, 2.0, 0.15, 0.5);
    double prev = 0.0;
    for (double T : {2.0, 5.0, 10.0, 50.0, 100.0, 1000.0}) {
        const double q = return_level_markov(m, ReturnSpec{T, 365.25});
        CHECK(q > prev);
        prev = q;
    }

    // halving theta lowers the level (verified against the oracle direction)
    const MarkovModel full = model_of(5.0, 0.1, 2.0, 0.15, 0.8);
    const MarkovModel half = model_of(5.0, 0.1, 2.0, 0.15, 0.4);
    const double q_full = return_level_markov(full, ReturnSpec{100, 365.25});
    const double q_half = return_level_markov(half, ReturnSpec{100, 365.25});
    CHECK(q_half < q_full);
    CHECK(invert_annual_max(half.marginal, 0.4, 100, 365.25) <
          invert_annual_max(full.marginal, 0.8, 100, 365.25));
}

TEST_CASE("markov return level is continuous across xi = 0") {
    for (double s : {1.0, -1.0}) {
        const MarkovModel near = model_of(5.0, 0.1, 2.0, s * 1e-8, 0.5);
        const MarkovModel zero = model_of(5.0, 0.1, 2.0, 0.0, 0.5);
        const double a = return_level_markov(near, ReturnSpec{100, 365.25});
        const double b = return_level_markov(zero, ReturnSpec{100, 365.25});
        CHECK(a == doctest::Approx(b).epsilon(1e-6));
    }
}

TEST_CASE("markov return level error cases") {
    MarkovModel m = model_of(5.0, 0.9, 2.0, 0.1, 0.1);
    CHECK_THROWS_AS(return_level_markov(m, ReturnSpec{1.5, 1.0}), QuantileBelowThreshold);
    m.theta.reset();
    CHECK_THROWS_AS(return_level_markov(m, ReturnSpec{100, 365.25}), Error);
    MarkovModel bad = model_of(5.0, 0.9, 2.0, 0.1, 0.5);
    CHECK_THROWS_AS(return_level_markov(bad, ReturnSpec{0.5, 365.25}), Error);
}

TEST_CASE("pot return level hand value and properties") {
    const GpdParams p{0.0, 0.1, 1.0, 0.0};
    CHECK(return_level_pot(p, 2.0, ReturnSpec{50, 365.25}) ==
          doctest::Approx(std::log(100.0)).epsilon(1e-12));

    const GpdParams q{3.0, 0.1, 2.0, 0.2};
    double prev = 0.0;
    for (double T : {2.0, 10.0, 100.0}) {
        const double v = return_level_pot(q, 1.5, ReturnSpec{T, 365.25});
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(return_level_pot(q, 0.4, ReturnSpec{2, 365.25}), QuantileBelowThreshold);
}

TEST_CASE("pot and markov agree for independent extremes at long horizons") {
    // theta = 1 and cluster_rate = n * lambda describe the same tail
    const double lambda = 0.05, n = 365.25;
    const MarkovModel m = model_of(10.0, lambda, 2.0, 0.2, 1.0);
    for (double T : {200.0, 500.0, 1000.0}) {
        const double markov = return_level_markov(m, ReturnSpec{T, n});
        const double pot = return_level_pot(m.marginal, n * lambda, ReturnSpec{T, n});
        CHECK(markov == doctest::Approx(pot).epsilon(0.01));
    }
}

TEST_CASE("return levels scale with the data units") {
    const double c = 7.5;
    const MarkovModel m = model_of(5.0, 0.1, 2.0, 0.2, 0.6);
    MarkovModel scaled = m;
    scaled.marginal.u *= c;
    scaled.marginal.sigma *= c;
    const ReturnSpec spec{100, 365.25};
    CHECK(return_level_markov(scaled, spec) ==
          doctest::Approx(c * return_level_markov(m, spec)).epsilon(1e-12));
    CHECK(return_level_pot(scaled.marginal, 2.0, spec) ==
          doctest::Approx(c * return_level_pot(m.marginal, 2.0, spec)).epsilon(1e-12));
}
