#include "mcpot/gpd.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <vector>

#include "mcpot/simplex.hpp"

namespace mcpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 + xi*(y-u)/sigma)_+, the GPD profile argument
double profile_arg(double y, const GpdParams& p) {
    return std::max(0.0, 1.0 + p.xi * (y - p.u) / p.sigma);
}

// Log-likelihood of excesses under the exceedance density
// (1/sigma) * (1 + xi*x/sigma)^(-1/xi - 1); +(-inf) outside the domain.
double excess_loglik(std::span<const double> excess, double sigma, double xi) {
    if (!(sigma > 0.0) || xi <= -1.0) return -kInf;
    double ll = -static_cast<double>(excess.size()) * std::log(sigma);
    if (std::abs(xi) < kXiZeroTol) {
        for (double x : excess) ll -= x / sigma;
        return ll;
    }
    const double c = -(1.0 / xi + 1.0);
    for (double x : excess) {
        const double t = 1.0 + xi * x / sigma;
        if (t <= 0.0) return -kInf;
        ll += c * std::log(t);
    }
    return ll;
}

}  // namespace

double GpdParams::support_end() const {
    return xi < 0.0 ? u - sigma / xi : kInf;
}

void validate(const GpdParams& p) {
    if (!(p.sigma > 0.0)) throw Error("GPD scale must be positive");
    if (!(p.lambda > 0.0) || p.lambda > 1.0) throw Error("GPD lambda must lie in (0, 1]");
    if (!std::isfinite(p.u)) throw Error("GPD threshold must be finite");
}

double gpd_cdf(double y, const GpdParams& p) {
    if (y < p.u) throw BelowThreshold("gpd_cdf: y below threshold");
    if (std::abs(p.xi) < kXiZeroTol) return 1.0 - p.lambda * std::exp(-(y - p.u) / p.sigma);
    const double t = profile_arg(y, p);
    if (t <= 0.0) return 1.0;  // above the xi<0 support end
    return 1.0 - p.lambda * std::pow(t, -1.0 / p.xi);
}

double gpd_pdf(double y, const GpdParams& p) {
    if (y < p.u) throw BelowThreshold("gpd_pdf: y below threshold");
    if (std::abs(p.xi) < kXiZeroTol)
        return p.lambda / p.sigma * std::exp(-(y - p.u) / p.sigma);
    const double t = profile_arg(y, p);
    if (t <= 0.0) return 0.0;
    return p.lambda / p.sigma * std::pow(t, -1.0 / p.xi - 1.0);
}

double gpd_quantile(double prob, const GpdParams& p) {
    if (prob < 1.0 - p.lambda)
        throw BelowThreshold("gpd_quantile: probability below the censored mass");
    if (!(prob < 1.0)) throw Error("gpd_quantile: probability must be < 1");
    const double ratio = p.lambda / (1.0 - prob);  // >= 1
    if (std::abs(p.xi) < kXiZeroTol) return p.u + p.sigma * std::log(ratio);
    return p.u + p.sigma / p.xi * (std::pow(ratio, p.xi) - 1.0);
}

GpdFit fit_gpd_mle(std::span<const double> exceedances, double u, double lambda,
                   std::optional<double> fixed_xi) {
    if (exceedances.size() < 5) throw InsufficientData("fit_gpd_mle: need at least 5 exceedances");
    std::vector<double> excess;
    excess.reserve(exceedances.size());
    for (double y : exceedances) {
        if (y <= u) throw BelowThreshold("fit_gpd_mle: sample value at or below threshold");
        excess.push_back(y - u);
    }
    const auto [mn, mx] = std::minmax_element(excess.begin(), excess.end());
    if (*mx - *mn <= 0.0) throw InsufficientData("fit_gpd_mle: degenerate sample (all equal)");

    // PWM start, falling back to the exponential fit if the moments degenerate.
    double sigma0 = std::accumulate(excess.begin(), excess.end(), 0.0) / excess.size();
    double xi0 = 0.0;
    try {
        const GpdParams pwm = fit_gpd_pwm(exceedances, u, /*biased=*/false, lambda);
        sigma0 = pwm.sigma;
        xi0 = std::clamp(pwm.xi, -0.9, 0.9);
    } catch (const Error&) {
    }

    const bool fix = fixed_xi.has_value();
    auto objective = [&](std::span<const double> x) {
        const double sigma = std::exp(x[0]);
        const double xi = fix ? *fixed_xi : x[1];
        const double ll = excess_loglik(excess, sigma, xi);
        return std::isfinite(ll) ? -ll : kInf;
    };

    SimplexOptions opts;
    opts.tol = 1e-9;
    std::vector<double> start = fix ? std::vector<double>{std::log(sigma0)}
                                    : std::vector<double>{std::log(sigma0), xi0};
    SimplexResult best = minimize_simplex(objective, start, opts);
    int iterations = best.iterations;
    for (int r = 0; r < 2; ++r) {  // restart from the incumbent
        SimplexResult again = minimize_simplex(objective, best.x, opts);
        iterations += again.iterations;
        if (again.value < best.value) best = again;
        if (best.converged && again.converged) break;
    }

    if (!std::isfinite(best.value))
        throw ConvergenceFailure("fit_gpd_mle: no admissible parameters found", best.x,
                                 best.value, kInf);
    if (!best.converged) {
        const double gnorm = gradient_norm(objective, best.x);
        if (gnorm > 1e-3)
            throw ConvergenceFailure("fit_gpd_mle: simplex did not converge", best.x,
                                     -best.value, gnorm);
    }

    GpdFit fit;
    fit.params = GpdParams{u, lambda, std::exp(best.x[0]), fix ? *fixed_xi : best.x[1]};
    fit.loglik = -best.value;
    fit.iterations = iterations;
    fit.converged = true;

    // Observed information in natural (sigma, xi) coordinates.
    const double s = fit.params.sigma, x2 = fit.params.xi;
    const double hs = 1e-5 * std::max(1.0, std::abs(s)), hx = 1e-5;
    auto nll = [&](double sg, double xv) {
        const double ll = excess_loglik(excess, sg, xv);
        return std::isfinite(ll) ? -ll : kInf;
    };
    const double f0 = nll(s, x2);
    const double dss = (nll(s + hs, x2) - 2 * f0 + nll(s - hs, x2)) / (hs * hs);
    const double dxx = (nll(s, x2 + hx) - 2 * f0 + nll(s, x2 - hx)) / (hx * hx);
    const double dsx = (nll(s + hs, x2 + hx) - nll(s + hs, x2 - hx) - nll(s - hs, x2 + hx) +
                        nll(s - hs, x2 - hx)) /
                       (4 * hs * hx);
    const double det = dss * dxx - dsx * dsx;
    if (std::isfinite(det) && det > 0.0 && dss > 0.0) {
        fit.covariance = {dxx / det, -dsx / det, -dsx / det, dss / det};
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        fit.covariance = {nan, nan, nan, nan};
    }
    return fit;
}

GpdParams fit_gpd_pwm(std::span<const double> exceedances, double u, bool biased, double lambda,
                      double plotting_offset) {
    const std::size_t n = exceedances.size();
    if (n < 2) throw InsufficientData("fit_gpd_pwm: need at least 2 exceedances");
    std::vector<double> excess;
    excess.reserve(n);
    for (double y : exceedances) {
        if (y <= u) throw BelowThreshold("fit_gpd_pwm: sample value at or below threshold");
        excess.push_back(y - u);
    }
    // Descending order: weight i estimates the survival 1 - F at x(i).
    std::sort(excess.begin(), excess.end(), std::greater<>());

    double b0 = 0.0, b1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        b0 += excess[i];
        const double w = biased ? (static_cast<double>(i) + 1.0 - plotting_offset) / n
                                : static_cast<double>(i) / (static_cast<double>(n) - 1.0);
        b1 += w * excess[i];
    }
    b0 /= static_cast<double>(n);
    b1 /= static_cast<double>(n);

    const double denom = b0 - 2.0 * b1;
    if (std::abs(denom) < 1e-12 * std::max(1.0, b0))
        throw DegenerateMoments("fit_gpd_pwm: b0 = 2*b1");

    GpdParams p;
    p.u = u;
    p.lambda = lambda;
    p.xi = 2.0 - b0 / denom;
    p.sigma = 2.0 * b0 * b1 / denom;
    if (!(p.sigma > 0.0)) throw DegenerateMoments("fit_gpd_pwm: nonpositive scale estimate");
    if (p.xi >= 0.5)
        std::cerr << "fit_gpd_pwm: warning: shape estimate " << p.xi
                  << " is outside the xi < 0.5 validity range of the moment estimator\n";
    return p;
}

}  // namespace mcpot
