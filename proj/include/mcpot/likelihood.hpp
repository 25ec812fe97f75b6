#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "mcpot/dependence.hpp"
#include "mcpot/gpd.hpp"
#include "mcpot/series.hpp"

namespace mcpot {

/// The full inferential object: GPD margin, extremal dependence structure and
/// (once estimated) the extremal index.
struct MarkovModel {
    GpdParams marginal;
    DependenceModel dep;
    std::optional<double> theta;  // extremal index, filled by the exindex pipeline
};

/// Unit-Frechet coordinate z = -1/log F(y); observations at or below the
/// threshold take the censoring plug-in z_u = -1/log(1 - lambda).
double frechet_z(double y, const GpdParams& marginal);
double censored_z(const GpdParams& marginal);

/// Log contribution of a consecutive pair to the transition numerator:
/// density branch when both exceed, cdf-partial branches when one is
/// censored, joint cdf mass when both are.
double pair_loglik(double y1, double y2, const MarkovModel& model);

/// Log contribution of a single observation to the denominator: GPD log
/// density above u, log(1 - lambda) at or below it.
double marginal_loglik(double y, const GpdParams& marginal);

/// Censored pairwise Markov log-likelihood: sum of adjacent-pair terms minus
/// interior marginal terms, per maximal run of consecutive unmasked days.
/// Pairs spanning masked days are dropped.
double chain_loglik(std::span<const double> y, std::span<const std::uint8_t> missing,
                    const MarkovModel& model);
double chain_loglik(const DailySeries& window, const MarkovModel& model);

struct MarkovFit {
    MarkovModel model;
    double loglik = 0.0;
    int iterations = 0;
    int restarts = 0;
    bool converged = false;
    double spread = 0.0;  // final simplex value spread (gradient-free diagnostic)
};

/// Maximize the censored chain likelihood over (log sigma, xi, dependence
/// parameters) with lambda profiled at N/n. Simplex with seeded random
/// restarts, started from the unbiased-PWM margin and mid-domain dependence.
MarkovFit fit_markov(std::span<const double> y, std::span<const std::uint8_t> missing, double u,
                     const DependenceModel& prototype, std::uint64_t seed = 0);
MarkovFit fit_markov(const DailySeries& window, double u, Family family, std::uint64_t seed = 0);

}  // namespace mcpot
