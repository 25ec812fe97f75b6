#pragma once

#include <array>
#include <optional>
#include <span>

#include "mcpot/errors.hpp"

namespace mcpot {

/// Shape values closer to zero than this use the exponential-limit formulas.
inline constexpr double kXiZeroTol = 1e-8;

/// Marginal tail model: F(y) = 1 - lambda * (1 + xi*(y-u)/sigma)_+^(-1/xi) for
/// y >= u, where lambda = Pr[Y >= u].
struct GpdParams {
    double u = 0.0;       // threshold
    double lambda = 1.0;  // exceedance probability, in (0, 1]
    double sigma = 1.0;   // scale, > 0
    double xi = 0.0;      // shape

    /// Upper support end: u - sigma/xi for xi < 0, +inf otherwise.
    double support_end() const;
};

void validate(const GpdParams& p);  // throws Error on sigma <= 0 or lambda outside (0,1]

double gpd_cdf(double y, const GpdParams& p);       // throws BelowThreshold for y < u
double gpd_pdf(double y, const GpdParams& p);       // upper branch of the censored density
double gpd_quantile(double prob, const GpdParams& p);  // exact inverse on [1-lambda, 1)

struct GpdFit {
    GpdParams params;
    std::array<double, 4> covariance{};  // observed-information covariance of (sigma, xi), row-major
    double loglik = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Maximum likelihood on (log sigma, xi) via restarted Nelder-Mead, started
/// from the unbiased PWM estimate. xi <= -1 is rejected (unbounded
/// likelihood). `lambda` is the caller's N/n estimate and is stored verbatim.
GpdFit fit_gpd_mle(std::span<const double> exceedances, double u, double lambda = 1.0,
                   std::optional<double> fixed_xi = std::nullopt);

/// Probability weighted moments (Hosking & Wallis 1987). `biased` selects the
/// plotting-position weights (i - offset)/n; otherwise the unbiased weights.
/// Returned xi follows the same sign convention as GpdParams.
GpdParams fit_gpd_pwm(std::span<const double> exceedances, double u, bool biased,
                      double lambda = 1.0, double plotting_offset = 0.65);

}  // namespace mcpot
