#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mcpot/series.hpp"

namespace mcpot {

/// Finite-level asymptotic-dependence measure chi(omega) from consecutive
/// rank pairs: 2 - log p_hat(omega, omega) / log omega, where p_hat is the
/// proportion of adjacent unmasked pairs with both ranks <= omega. Ranks use
/// the n+1 denominator.
double chi_empirical(std::span<const double> y, std::span<const std::uint8_t> missing, double omega);

/// chibar(omega) = 2 log(1 - omega) / log q_hat - 1, with q_hat the joint
/// survival proportion of consecutive rank pairs.
double chibar_empirical(std::span<const double> y, std::span<const std::uint8_t> missing, double omega);

/// Theoretical envelope for chi(omega): lower 2 - log(2*omega - 1)/log(omega)
/// (-inf for omega <= 1/2), upper 1.
double chi_lower_bound(double omega);
inline constexpr double kChiUpperBound = 1.0;

/// Statistic over a (values, mask) window; used by the block bootstrap.
using SeriesStatistic =
    std::function<double(std::span<const double>, std::span<const std::uint8_t>)>;

struct BootstrapCi {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t failures = 0;  // replicates where the statistic threw
};

/// Moving-block bootstrap: contiguous blocks resampled with replacement to
/// the original length; returns the equal-tail empirical interval at `level`.
/// Errors out when more than 20% of replicates fail.
BootstrapCi block_bootstrap_ci(std::span<const double> y, std::span<const std::uint8_t> missing,
                               const SeriesStatistic& statistic, int block_len, int n_boot,
                               double level, std::uint64_t seed);

struct ChiPoint {
    double omega;
    double chi, chi_lo, chi_hi;
    double chibar, chibar_lo, chibar_hi;
    double bound_lo, bound_hi;
};

struct ChiCurveConfig {
    int block_len = 30;
    int n_boot = 500;
    double level = 0.95;
    std::uint64_t seed = 0;
};

/// chi / chibar with bootstrap intervals over a grid of omegas; intervals are
/// clipped to the theoretical bounds.
std::vector<ChiPoint> chi_curve(const DailySeries& window, std::span<const double> omegas,
                                const ChiCurveConfig& cfg);

struct AcfResult {
    std::vector<double> acf;   // lags 0..max_lag
    std::vector<double> pacf;  // lags 0..max_lag, pacf[0] = 1 by convention
};

/// Sample autocorrelations (masked pairs dropped) and partial
/// autocorrelations via the Durbin-Levinson recursion.
AcfResult acf_pacf(std::span<const double> y, std::span<const std::uint8_t> missing, int max_lag);

}  // namespace mcpot
