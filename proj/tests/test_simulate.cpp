#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mcpot/diagnostics.hpp"
#include "mcpot/exindex.hpp"
#include "mcpot/simulate.hpp"

using namespace mcpot;

namespace {

MarkovModel model_with(DependenceModel dep, double lambda = 0.1) {
    MarkovModel m;
    m.marginal = GpdParams{1.0, lambda, 1.0, 0.1};
    m.dep = std::move(dep);
    return m;
}

}  // namespace

TEST_CASE("conditional_cdf reduces to the Frechet cdf at independence") {
    const DependenceModel indep = DependenceModel::logistic(1.0);
    for (double z1 : {0.4, 1.0, 3.0})
        for (double z2 : {0.2, 0.7, 1.5, 6.0})
            CHECK(conditional_cdf(z2, z1, indep) ==
                  doctest::Approx(std::exp(-1.0 / z2)).epsilon(1e-12));
}

TEST_CASE("conditional_cdf limits and monotonicity") {
    for (const DependenceModel& dep :
         {DependenceModel::logistic(0.4), DependenceModel::asy_mixed(0.5, 0.2),
          DependenceModel::neg_logistic(1.5)}) {
        for (double z1 : {0.5, 2.0}) {
            CHECK(conditional_cdf(1e8, z1, dep) == doctest::Approx(1.0).epsilon(1e-6));
            CHECK(conditional_cdf(1e-6, z1, dep) == doctest::Approx(0.0).epsilon(1e-6));
            double prev = 0.0;
            for (double z2 = 0.05; z2 < 50.0; z2 *= 1.6) {
                const double c = conditional_cdf(z2, z1, dep);
                CHECK(c >= prev - 1e-12);
                prev = c;
            }
        }
    }
}

TEST_CASE("sample_next inverts the conditional cdf") {
    // independence: solving exp(-1/z2) = draw gives z2 = -1/log(draw)
    const DependenceModel indep = DependenceModel::logistic(1.0);
    CHECK(sample_next(1.0, indep, 0.5) ==
          doctest::Approx(-1.0 / std::log(0.5)).epsilon(1e-8));

    for (const DependenceModel& dep :
         {DependenceModel::logistic(0.35), DependenceModel::asy_neg_logistic(1.2, 0.7, 0.9)}) {
        for (double z1 : {0.3, 1.0, 4.0})
            for (double draw : {0.05, 0.3, 0.5, 0.9, 0.99}) {
                const double z2 = sample_next(z1, dep, draw);
                CHECK(conditional_cdf(z2, z1, dep) == doctest::Approx(draw).epsilon(1e-8));
            }
    }
    CHECK_THROWS_AS(sample_next(1.0, indep, 0.0), Error);
}

TEST_CASE("simulate_chain is deterministic per seed and config") {
    const MarkovModel m = model_with(DependenceModel::asy_mixed(0.4, 0.1));
    const SimConfig cfg{3, 500, 42, 50};
    const auto a = simulate_chains(m, cfg);
    const auto b = simulate_chains(m, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].values == b[k].values);
        CHECK(a[k].exceeds == b[k].exceeds);
    }
    // chains use independent streams: different chains differ
    CHECK(a[0].values != a[1].values);
    // emitted length excludes burn-in
    CHECK(a[0].size() == 450);
}

TEST_CASE("simulated exceedance rate matches lambda") {
    const double lambda = 0.1;
    const MarkovModel m = model_with(DependenceModel::logistic(0.5), lambda);
    const SimConfig cfg{20, 1100, 7, 100};
    const auto chains = simulate_chains(m, cfg);
    std::size_t n = 0, hits = 0;
    for (const auto& c : chains) {
        n += c.size();
        for (bool e : c.exceeds) hits += e;
    }
    const double rate = static_cast<double>(hits) / static_cast<double>(n);
    // dependence inflates the binomial se; allow a clustered-variance margin
    const double se = std::sqrt(lambda * (1.0 - lambda) / static_cast<double>(n)) * 3.0;
    CHECK(std::abs(rate - lambda) < 5.0 * se);

    // every exceedance magnitude lies above the threshold marker
    for (const auto& c : chains)
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.exceeds[i]) CHECK(c.values[i] > m.marginal.u);
            else CHECK(c.values[i] == m.marginal.u);
        }
}

TEST_CASE("pairwise chi of a simulated chain approaches the model chi") {
    const MarkovModel m = model_with(DependenceModel::mixed(0.8), 0.2);
    const SimConfig cfg{1, 20100, 0, 100};
    const SimulatedChain chain = simulate_chain(m, cfg, 0);
    const std::vector<std::uint8_t> mask(chain.size(), 0);

    // the consecutive-pair copula is the EVD itself, so chi(omega) is flat at
    // the asymptotic value for omega above the censored mass
    const double chi_hat = chi_empirical(chain.values, mask, 0.95);
    const BootstrapCi ci = block_bootstrap_ci(
        chain.values, mask,
        [](std::span<const double> v, std::span<const std::uint8_t> ms) {
            return chi_empirical(v, ms, 0.95);
        },
        30, 200, 0.95, 9);
    const double truth = m.dep.chi();
    CHECK(std::abs(chi_hat - truth) < 0.1);
    CHECK(ci.lo <= truth);
    CHECK(truth <= ci.hi);

    // asymmetric mixed chains land on chi = (2 alpha + 3 theta) / 4 as well
    const MarkovModel am = model_with(DependenceModel::asy_mixed(0.4, 0.1), 0.2);
    const SimulatedChain achain = simulate_chain(am, cfg, 0);
    const std::vector<std::uint8_t> amask(achain.size(), 0);
    CHECK(std::abs(chi_empirical(achain.values, amask, 0.95) - am.dep.chi()) < 0.1);
}

TEST_CASE("chains are stationary across thirds") {
    // the multinomial chi-square is calibrated for independent exceedances;
    // clustered chains use cluster counts (runs with gap 2) for the same test
    for (double alpha : {1.0, 0.4}) {
        const MarkovModel m = model_with(DependenceModel::logistic(alpha), 0.15);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const SimulatedChain chain = simulate_chain(m, SimConfig{1, 3100, seed, 100}, 0);
            const std::size_t third = chain.size() / 3;
            double counts[3] = {0, 0, 0};
            std::size_t last_exceed = 0;
            bool have_last = false;
            for (std::size_t i = 0; i < 3 * third; ++i) {
                if (!chain.exceeds[i]) continue;
                if (alpha == 1.0) {
                    counts[i / third] += 1.0;  // independent: raw exceedances
                } else if (!have_last || i - last_exceed > 2) {
                    counts[i / third] += 1.0;  // clustered: event starts only
                }
                last_exceed = i;
                have_last = true;
            }
            const double expected = (counts[0] + counts[1] + counts[2]) / 3.0;
            REQUIRE(expected > 0.0);
            double chi2 = 0.0;
            for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
            CHECK(chi2 < 13.816);  // chi-square(2) at the 0.1% level
        }
    }
}

TEST_CASE("direction matters for asymmetric families") {
    const MarkovModel m = model_with(DependenceModel::asy_logistic(0.3, 1.0, 0.3), 0.2);
    const SimulatedChain chain = simulate_chain(m, SimConfig{1, 20100, 21, 100}, 0);
    const std::vector<std::uint8_t> mask(chain.size(), 0);

    // P[up-step | exceed] differs between the chain and its reversal
    std::size_t up = 0, down = 0;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (!(chain.exceeds[i] && chain.exceeds[i - 1])) continue;
        if (chain.values[i] > chain.values[i - 1]) ++up;
        else ++down;
    }
    REQUIRE(up + down > 100);
    const double frac_up = static_cast<double>(up) / static_cast<double>(up + down);
    CHECK(std::abs(frac_up - 0.5) > 0.02);
}

TEST_CASE("independent chains give extremal index near one") {
    const MarkovModel m = model_with(DependenceModel::logistic(1.0), 0.1);
    const ThetaEstimate est = theta_pipeline(m, SimConfig{20, 1100, 13, 100});
    CHECK(est.theta > 0.95);
}

TEST_CASE("config validation") {
    const MarkovModel m = model_with(DependenceModel::logistic(0.5));
    CHECK_THROWS_AS(simulate_chains(m, SimConfig{0, 100, 0, 10}), Error);
    CHECK_THROWS_AS(simulate_chains(m, SimConfig{1, 100, 0, 100}), Error);
}
