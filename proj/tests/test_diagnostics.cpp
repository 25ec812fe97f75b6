#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mcpot/diagnostics.hpp"
#include "mcpot/likelihood.hpp"
#include "mcpot/simulate.hpp"

using namespace mcpot;

namespace {

std::vector<std::uint8_t> no_mask(std::size_t n) {
    return std::vector<std::uint8_t>(n, 0);
}

std::vector<double> iid_uniform(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> y(n);
    for (double& v : y) v = rng.next_uniform();
    return y;
}

}  // namespace

TEST_CASE("chi and chibar vanish for independent series") {
    const auto y = iid_uniform(20000, 101);
    const auto mask = no_mask(y.size());
    CHECK(std::abs(chi_empirical(y, mask, 0.9)) < 0.1);
    CHECK(std::abs(chibar_empirical(y, mask, 0.9)) < 0.1);
}

TEST_CASE("comonotone consecutive pairs push chi and chibar to one") {
    // strictly increasing series: rank pairs are perfectly dependent
    std::vector<double> y(5000);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(i);
    const auto mask = no_mask(y.size());
    CHECK(chi_empirical(y, mask, 0.9) > 0.9);
    CHECK(chibar_empirical(y, mask, 0.9) > 0.9);
}

TEST_CASE("chi respects its theoretical envelope") {
    CHECK(chi_lower_bound(0.4) == -std::numeric_limits<double>::infinity());
    // 2 - log(0.8)/log(0.9)
    CHECK(chi_lower_bound(0.9) ==
          doctest::Approx(2.0 - std::log(0.8) / std::log(0.9)).epsilon(1e-12));
    const auto y = iid_uniform(5000, 7);
    const auto mask = no_mask(y.size());
    for (double omega : {0.6, 0.8, 0.9, 0.95}) {
        const double c = chi_empirical(y, mask, omega);
        CHECK(c <= kChiUpperBound + 1e-12);
        CHECK(c >= chi_lower_bound(omega) - 1e-12);
    }
}

TEST_CASE("rank statistics are invariant under increasing transforms") {
    auto y = iid_uniform(3000, 55);
    std::vector<double> t(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) t[i] = std::exp(3.0 * y[i]) + 5.0;
    const auto mask = no_mask(y.size());
    for (double omega : {0.8, 0.9, 0.95}) {
        CHECK(chi_empirical(y, mask, omega) == chi_empirical(t, mask, omega));
        CHECK(chibar_empirical(y, mask, omega) == chibar_empirical(t, mask, omega));
    }
}

TEST_CASE("asymptotically dependent chains give chibar above 0.75") {
    MarkovModel m;
    m.marginal = GpdParams{1.0, 0.2, 1.0, 0.1};
    m.dep = DependenceModel::logistic(0.4);
    const SimulatedChain chain = simulate_chain(m, SimConfig{1, 20100, 6, 100}, 0);
    const auto mask = no_mask(chain.size());
    CHECK(chibar_empirical(chain.values, mask, 0.98) > 0.75);
}

TEST_CASE("chibar never exceeds one") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto y = iid_uniform(2000, seed);
        const auto mask = no_mask(y.size());
        for (double omega : {0.7, 0.9})
            CHECK(chibar_empirical(y, mask, omega) <= 1.0 + 1e-12);
    }
}

TEST_CASE("masked pairs are dropped from chi") {
    // the statistic must depend only on complete adjacent pairs
    auto y = iid_uniform(4000, 3);
    auto mask = no_mask(y.size());
    for (std::size_t i = 0; i < y.size(); i += 7) {
        y[i] = 1e9;  // junk value hidden behind the mask
        mask[i] = 1;
    }
    CHECK_NOTHROW(chi_empirical(y, mask, 0.9));
}

TEST_CASE("block bootstrap basics") {
    const auto y = iid_uniform(1000, 17);
    const auto mask = no_mask(y.size());

    // constant statistic: degenerate interval, no failures
    const BootstrapCi c = block_bootstrap_ci(
        y, mask, [](std::span<const double>, std::span<const std::uint8_t>) { return 3.25; },
        20, 200, 0.95, 1);
    CHECK(c.lo == 3.25);
    CHECK(c.hi == 3.25);
    CHECK(c.failures == 0);

    // mean statistic: interval brackets the sample mean and shrinks with level
    auto mean_stat = [](std::span<const double> v, std::span<const std::uint8_t>) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    const BootstrapCi wide = block_bootstrap_ci(y, mask, mean_stat, 20, 400, 0.99, 2);
    const BootstrapCi narrow = block_bootstrap_ci(y, mask, mean_stat, 20, 400, 0.5, 2);
    double mean = 0.0;
    for (double x : y) mean += x;
    mean /= static_cast<double>(y.size());
    CHECK(wide.lo < mean);
    CHECK(mean < wide.hi);
    CHECK(narrow.hi - narrow.lo < wide.hi - wide.lo);

    // deterministic per seed
    const BootstrapCi again = block_bootstrap_ci(y, mask, mean_stat, 20, 400, 0.99, 2);
    CHECK(again.lo == wide.lo);
    CHECK(again.hi == wide.hi);

    // failure budget: a statistic that always throws errors out
    CHECK_THROWS_AS(block_bootstrap_ci(
                        y, mask,
                        [](std::span<const double>, std::span<const std::uint8_t>) -> double {
                            throw Error("boom");
                        },
                        20, 200, 0.95, 3),
                    Error);
}

TEST_CASE("bootstrap chi interval covers the true value at nominal-ish rate") {
    MarkovModel m;
    m.marginal = GpdParams{1.0, 0.2, 1.0, 0.1};
    m.dep = DependenceModel::mixed(0.8);
    const double truth = m.dep.chi();  // chi(omega) is flat for an EVD pair copula

    int covered = 0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        const SimulatedChain chain =
            simulate_chain(m, SimConfig{1, 1600, static_cast<std::uint64_t>(r), 100}, 0);
        const auto mask = no_mask(chain.size());
        try {
            const BootstrapCi ci = block_bootstrap_ci(
                chain.values, mask,
                [](std::span<const double> v, std::span<const std::uint8_t> ms) {
                    return chi_empirical(v, ms, 0.95);
                },
                30, 120, 0.95, static_cast<std::uint64_t>(1000 + r));
            if (ci.lo <= truth && truth <= ci.hi) ++covered;
        } catch (const Error&) {
            // count a failed replicate as non-covering
        }
    }
    CHECK(covered >= 0.85 * reps);
}

TEST_CASE("chi_curve clips estimates and intervals to the theoretical bounds") {
    const auto y = iid_uniform(4000, 23);
    DailySeries s;
    s.station_id = "x";
    s.values = y;
    s.missing.assign(y.size(), 0);
    const std::vector<double> omegas{0.8, 0.9, 0.95};
    const auto curve = chi_curve(s, omegas, ChiCurveConfig{30, 150, 0.95, 5});
    REQUIRE(curve.size() == 3);
    for (const ChiPoint& p : curve) {
        CHECK(p.chi_hi <= 1.0 + 1e-12);
        CHECK(p.chi_lo >= chi_lower_bound(p.omega) - 1e-12);
        CHECK(p.chibar_lo >= -1.0);
        CHECK(p.chibar_hi <= 1.0);
        CHECK(p.bound_hi == 1.0);
    }

    // perfectly dependent pairs stress the upper bounds; the reported values
    // must stay inside the envelope
    DailySeries mono;
    mono.station_id = "m";
    mono.values.resize(2000);
    for (std::size_t i = 0; i < mono.values.size(); ++i)
        mono.values[i] = static_cast<double>(i);
    mono.missing.assign(mono.values.size(), 0);
    const auto mc = chi_curve(mono, omegas, ChiCurveConfig{30, 150, 0.95, 6});
    for (const ChiPoint& p : mc) {
        CHECK(p.chi <= 1.0);
        CHECK(p.chi >= chi_lower_bound(p.omega));
        CHECK(p.chibar <= 1.0);
        CHECK(p.chibar > -1.0);
    }
}

TEST_CASE("acf and pacf on white noise and AR(1)") {
    const std::size_t n = 4000;
    CounterRng rng(9);
    std::vector<double> wn(n);
    for (double& v : wn) {
        // sum of 12 uniforms, approximately normal
        double s = 0.0;
        for (int k = 0; k < 12; ++k) s += rng.next_uniform();
        v = s - 6.0;
    }
    const auto mask = no_mask(n);
    const AcfResult white = acf_pacf(wn, mask, 10);
    CHECK(white.acf[0] == 1.0);
    CHECK(white.pacf[0] == 1.0);
    int big = 0;
    for (int k = 1; k <= 10; ++k) {
        CHECK(std::abs(white.acf[k]) < 4.0 / std::sqrt(static_cast<double>(n)));
        if (std::abs(white.acf[k]) > 2.0 / std::sqrt(static_cast<double>(n))) ++big;
    }
    CHECK(big <= 2);

    std::vector<double> ar(n);
    double x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x = 0.8 * x + wn[i];
        ar[i] = x;
    }
    const AcfResult a = acf_pacf(ar, mask, 6);
    CHECK(a.acf[1] == doctest::Approx(0.8).epsilon(0.05));
    CHECK(a.pacf[1] == doctest::Approx(0.8).epsilon(0.05));
    for (int k = 2; k <= 6; ++k)
        CHECK(std::abs(a.pacf[k]) < 5.0 / std::sqrt(static_cast<double>(n)));

    CHECK_THROWS_AS(acf_pacf(wn, mask, static_cast<int>(n)), Error);
}
