#include "mcpot/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mcpot/rng.hpp"

namespace mcpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Mid-ranks over the unmasked values, scaled by 1/(n+1); masked slots get NaN.
std::vector<double> scaled_ranks(std::span<const double> y, std::span<const std::uint8_t> missing) {
    std::vector<std::size_t> idx;
    idx.reserve(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!missing[i]) idx.push_back(i);

    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });

    std::vector<double> u(y.size(), std::numeric_limits<double>::quiet_NaN());
    const double denom = static_cast<double>(idx.size()) + 1.0;
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;  // tie block [i, j]
        while (j + 1 < idx.size() && y[idx[j + 1]] == y[idx[i]]) ++j;
        const double mid_rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) u[idx[k]] = mid_rank / denom;
        i = j + 1;
    }
    return u;
}

// Proportion of adjacent unmasked pairs satisfying `joint`, plus the count.
template <typename Pred>
std::pair<double, std::size_t> pair_proportion(std::span<const double> y,
                                               std::span<const std::uint8_t> missing, Pred joint) {
    const std::vector<double> u = scaled_ranks(y, missing);
    std::size_t pairs = 0, hits = 0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        if (missing[t] || missing[t - 1]) continue;
        ++pairs;
        if (joint(u[t - 1], u[t])) ++hits;
    }
    if (pairs < 50)
        throw InsufficientData("chi: need at least 50 consecutive unmasked pairs");
    return {static_cast<double>(hits) / static_cast<double>(pairs), pairs};
}

void check_omega(double omega) {
    if (!(omega > 0.0) || !(omega < 1.0)) throw Error("omega must lie in (0, 1)");
}

}  // namespace

double chi_empirical(std::span<const double> y, std::span<const std::uint8_t> missing, double omega) {
    check_omega(omega);
    const auto [p, pairs] =
        pair_proportion(y, missing, [&](double a, double b) { return a <= omega && b <= omega; });
    if (p <= 0.0)
        throw Error("chi_empirical: no joint non-exceedances (omega too small for sample)");
    return 2.0 - std::log(p) / std::log(omega);
}

double chibar_empirical(std::span<const double> y, std::span<const std::uint8_t> missing, double omega) {
    check_omega(omega);
    const auto [q, pairs] =
        pair_proportion(y, missing, [&](double a, double b) { return a > omega && b > omega; });
    if (q <= 0.0) throw Error("chibar_empirical: no joint survivals at omega");
    return 2.0 * std::log1p(-omega) / std::log(q) - 1.0;
}

double chi_lower_bound(double omega) {
    if (omega <= 0.5) return -kInf;
    return 2.0 - std::log(2.0 * omega - 1.0) / std::log(omega);
}

BootstrapCi block_bootstrap_ci(std::span<const double> y, std::span<const std::uint8_t> missing,
                               const SeriesStatistic& statistic, int block_len, int n_boot,
                               double level, std::uint64_t seed) {
    if (block_len < 2) throw Error("block_bootstrap_ci: block_len must be >= 2");
    if (n_boot < 100) throw Error("block_bootstrap_ci: n_boot must be >= 100");
    if (!(level > 0.0) || !(level < 1.0)) throw Error("block_bootstrap_ci: bad level");
    const std::size_t n = y.size();
    if (n < static_cast<std::size_t>(block_len))
        throw Error("block_bootstrap_ci: series shorter than one block");

    CounterRng rng(seed, /*stream=*/0xb001);
    const std::size_t n_starts = n - static_cast<std::size_t>(block_len) + 1;

    std::vector<double> reps;
    reps.reserve(n_boot);
    std::vector<double> ry(n);
    std::vector<std::uint8_t> rm(n);
    std::size_t failures = 0;
    for (int b = 0; b < n_boot; ++b) {
        std::size_t pos = 0;
        while (pos < n) {
            const std::size_t start = rng.next_u64() % n_starts;
            const std::size_t take = std::min<std::size_t>(block_len, n - pos);
            for (std::size_t k = 0; k < take; ++k) {
                ry[pos + k] = y[start + k];
                rm[pos + k] = missing[start + k];
            }
            pos += take;
        }
        try {
            reps.push_back(statistic(ry, rm));
        } catch (const Error&) {
            ++failures;
        }
    }
    if (failures * 5 > static_cast<std::size_t>(n_boot))
        throw Error("block_bootstrap_ci: statistic failed on more than 20% of replicates");

    std::sort(reps.begin(), reps.end());
    const double tail = 0.5 * (1.0 - level);
    BootstrapCi ci;
    ci.lo = empirical_quantile(reps, tail);
    ci.hi = empirical_quantile(reps, 1.0 - tail);
    ci.failures = failures;
    return ci;
}

std::vector<ChiPoint> chi_curve(const DailySeries& window, std::span<const double> omegas,
                                const ChiCurveConfig& cfg) {
    const std::span<const double> y(window.values);
    const std::span<const std::uint8_t> miss(window.missing);

    std::vector<ChiPoint> out;
    out.reserve(omegas.size());
    std::uint64_t stat_index = 0;
    for (double omega : omegas) {
        ChiPoint pt{};
        pt.omega = omega;
        pt.bound_lo = chi_lower_bound(omega);
        pt.bound_hi = kChiUpperBound;

        // rank granularity can push the raw estimates marginally past the
        // theoretical envelope; the curve reports clipped values
        pt.chi = std::clamp(chi_empirical(y, miss, omega), pt.bound_lo, pt.bound_hi);
        const BootstrapCi ci_chi = block_bootstrap_ci(
            y, miss,
            [omega](std::span<const double> v, std::span<const std::uint8_t> m) {
                return chi_empirical(v, m, omega);
            },
            cfg.block_len, cfg.n_boot, cfg.level,
            CounterRng::derive(cfg.seed, 0x11, stat_index));
        pt.chi_lo = std::max(ci_chi.lo, pt.bound_lo);
        pt.chi_hi = std::min(ci_chi.hi, pt.bound_hi);

        pt.chibar = std::min(chibar_empirical(y, miss, omega), 1.0);
        const BootstrapCi ci_bar = block_bootstrap_ci(
            y, miss,
            [omega](std::span<const double> v, std::span<const std::uint8_t> m) {
                return chibar_empirical(v, m, omega);
            },
            cfg.block_len, cfg.n_boot, cfg.level,
            CounterRng::derive(cfg.seed, 0x22, stat_index));
        pt.chibar_lo = std::max(ci_bar.lo, -1.0);
        pt.chibar_hi = std::min(ci_bar.hi, 1.0);

        out.push_back(pt);
        ++stat_index;
    }
    return out;
}

AcfResult acf_pacf(std::span<const double> y, std::span<const std::uint8_t> missing, int max_lag) {
    if (max_lag < 1) throw Error("acf_pacf: max_lag must be >= 1");
    std::size_t n_unmasked = 0;
    double mean = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (missing[i]) continue;
        ++n_unmasked;
        mean += y[i];
    }
    if (n_unmasked < 4 || static_cast<std::size_t>(max_lag) >= n_unmasked / 4)
        throw Error("acf_pacf: max_lag must be below a quarter of the sample");
    mean /= static_cast<double>(n_unmasked);

    double c0 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!missing[i]) c0 += (y[i] - mean) * (y[i] - mean);
    c0 /= static_cast<double>(n_unmasked);
    if (!(c0 > 0.0)) throw Error("acf_pacf: constant series");

    AcfResult res;
    res.acf.assign(max_lag + 1, 0.0);
    res.acf[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < y.size(); ++t) {
            if (missing[t] || missing[t - k]) continue;  // drop masked pairs
            ck += (y[t] - mean) * (y[t - k] - mean);
        }
        res.acf[k] = ck / static_cast<double>(n_unmasked) / c0;
    }

    // Durbin-Levinson
    res.pacf.assign(max_lag + 1, 0.0);
    res.pacf[0] = 1.0;
    std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
    double denom = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = res.acf[k];
        for (int j = 1; j < k; ++j) num -= prev[j] * res.acf[k - j];
        const double pk = num / denom;
        phi[k] = pk;
        for (int j = 1; j < k; ++j) phi[j] = prev[j] - pk * prev[k - j];
        denom *= (1.0 - pk * pk);
        if (!(denom > 0.0)) denom = 1e-12;
        res.pacf[k] = pk;
        prev = phi;
    }
    return res;
}

}  // namespace mcpot
