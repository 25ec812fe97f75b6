#include "mcpot/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mcpot/rng.hpp"
#include "mcpot/simplex.hpp"

namespace mcpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Point {
    bool censored;
    double z;        // Frechet coordinate (z_u when censored)
    double log_k;    // log |K| = log(lambda/sigma) + (1+xi) log t + 2 log z + 1/z
};

Point make_point(double y, const GpdParams& p, double z_u, double log_lambda_sigma) {
    Point pt;
    pt.censored = y <= p.u;
    if (pt.censored) {
        pt.z = z_u;
        pt.log_k = 0.0;  // unused on censored branches
        return pt;
    }
    const double f = gpd_cdf(y, p);
    if (!(f < 1.0)) throw SupportExceeded("frechet transform: F(y) reached 1");
    pt.z = -1.0 / std::log(f);
    double log_t;  // t = (1 + xi (y-u)/sigma)^(-1/xi)
    if (std::abs(p.xi) < kXiZeroTol) {
        log_t = -(y - p.u) / p.sigma;
    } else {
        const double base = 1.0 + p.xi * (y - p.u) / p.sigma;
        if (!(base > 0.0)) throw SupportExceeded("frechet transform: outside GPD support");
        log_t = -std::log(base) / p.xi;
    }
    pt.log_k = log_lambda_sigma + (1.0 + p.xi) * log_t + 2.0 * std::log(pt.z) + 1.0 / pt.z;
    return pt;
}

double pair_term(const Point& a, const Point& b, const DependenceModel& dep) {
    const VDerivatives d = eval_v(a.z, b.z, dep);
    if (a.censored && b.censored) return -d.v;
    if (!a.censored && !b.censored) {
        const double dens = d.v1 * d.v2 - d.v12;
        if (!(dens > 0.0))
            throw NonPositiveDensity("pair_loglik: V1*V2 - V12 <= 0");
        return -d.v + std::log(dens) + a.log_k + b.log_k;
    }
    if (!a.censored) {
        if (!(d.v1 < 0.0)) throw NonPositiveDensity("pair_loglik: V1 >= 0");
        return -d.v + std::log(-d.v1) + a.log_k;
    }
    if (!(d.v2 < 0.0)) throw NonPositiveDensity("pair_loglik: V2 >= 0");
    return -d.v + std::log(-d.v2) + b.log_k;
}

}  // namespace

double censored_z(const GpdParams& marginal) {
    if (marginal.lambda >= 1.0)
        throw Error("censored_z: lambda = 1 leaves no mass below the threshold");
    return -1.0 / std::log1p(-marginal.lambda);
}

double frechet_z(double y, const GpdParams& marginal) {
    validate(marginal);
    if (y <= marginal.u) return censored_z(marginal);
    const double f = gpd_cdf(y, marginal);
    if (!(f < 1.0)) throw SupportExceeded("frechet_z: F(y) reached 1");
    return -1.0 / std::log(f);
}

double marginal_loglik(double y, const GpdParams& marginal) {
    validate(marginal);
    if (y > marginal.u) {
        const double d = gpd_pdf(y, marginal);
        if (!(d > 0.0)) throw SupportExceeded("marginal_loglik: zero density above threshold");
        return std::log(d);
    }
    if (marginal.lambda >= 1.0)
        throw Error("marginal_loglik: lambda = 1 with a censored observation");
    return std::log1p(-marginal.lambda);
}

double pair_loglik(double y1, double y2, const MarkovModel& model) {
    validate(model.marginal);
    model.dep.validate();
    const bool any_censored = y1 <= model.marginal.u || y2 <= model.marginal.u;
    const double z_u = any_censored ? censored_z(model.marginal) : 0.0;
    const double lls = std::log(model.marginal.lambda) - std::log(model.marginal.sigma);
    const Point a = make_point(y1, model.marginal, z_u, lls);
    const Point b = make_point(y2, model.marginal, z_u, lls);
    return pair_term(a, b, model.dep);
}

double chain_loglik(std::span<const double> y, std::span<const std::uint8_t> missing,
                    const MarkovModel& model) {
    if (y.size() != missing.size()) throw Error("chain_loglik: value/mask length mismatch");
    validate(model.marginal);
    model.dep.validate();

    std::size_t n_unmasked = 0;
    bool any_censored = false;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (missing[i]) continue;
        ++n_unmasked;
        if (y[i] <= model.marginal.u) any_censored = true;
    }
    if (n_unmasked < 3) throw InsufficientData("chain_loglik: need at least 3 unmasked values");

    const GpdParams& p = model.marginal;
    const double z_u = any_censored ? censored_z(p) : 0.0;
    const double lls = std::log(p.lambda) - std::log(p.sigma);

    // Both-censored pairs and censored marginals repeat the same values.
    double censored_pair = 0.0;
    if (any_censored) {
        const Point cu{true, z_u, 0.0};
        censored_pair = pair_term(cu, cu, model.dep);
    }
    const double censored_marg = p.lambda < 1.0 ? std::log1p(-p.lambda) : -kInf;

    double ll = 0.0;
    std::size_t i = 0;
    const std::size_t n = y.size();
    while (i < n) {
        if (missing[i]) {
            ++i;
            continue;
        }
        std::size_t run_end = i;  // maximal run of consecutive unmasked days
        while (run_end + 1 < n && !missing[run_end + 1]) ++run_end;
        if (run_end > i) {
            Point prev = make_point(y[i], p, z_u, lls);
            for (std::size_t j = i + 1; j <= run_end; ++j) {
                const Point cur = make_point(y[j], p, z_u, lls);
                ll += (prev.censored && cur.censored) ? censored_pair
                                                      : pair_term(prev, cur, model.dep);
                if (j < run_end) {  // interior marginal of this run
                    if (cur.censored) {
                        if (censored_marg == -kInf)
                            throw Error("chain_loglik: lambda = 1 with censored data");
                        ll -= censored_marg;
                    } else {
                        // log gpd_pdf(y_j) = log|K_j| - 2 log z_j - 1/z_j
                        ll -= cur.log_k - 2.0 * std::log(cur.z) - 1.0 / cur.z;
                    }
                }
                prev = cur;
            }
        }
        i = run_end + 1;
    }
    return ll;
}

double chain_loglik(const DailySeries& window, const MarkovModel& model) {
    return chain_loglik(std::span<const double>(window.values),
                        std::span<const std::uint8_t>(window.missing), model);
}

MarkovFit fit_markov(std::span<const double> y, std::span<const std::uint8_t> missing, double u,
                     const DependenceModel& prototype, std::uint64_t seed) {
    if (y.size() != missing.size()) throw Error("fit_markov: value/mask length mismatch");
    prototype.validate();

    std::size_t n_unmasked = 0;
    std::vector<double> exceed;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (missing[i]) continue;
        ++n_unmasked;
        if (y[i] > u) exceed.push_back(y[i]);
    }
    if (exceed.size() < 10)
        throw InsufficientData("fit_markov: need at least 10 exceedances");
    const auto [mn, mx] = std::minmax_element(exceed.begin(), exceed.end());
    if (*mx - *mn <= 0.0) throw InsufficientData("fit_markov: degenerate exceedances");

    const double lambda_hat =
        static_cast<double>(exceed.size()) / static_cast<double>(n_unmasked);

    // Starting margin from unbiased PWM, exponential fallback.
    double sigma0 = 0.0;
    for (double v : exceed) sigma0 += v - u;
    sigma0 /= static_cast<double>(exceed.size());
    double xi0 = 0.0;
    try {
        const GpdParams pwm = fit_gpd_pwm(exceed, u, /*biased=*/false, lambda_hat);
        sigma0 = pwm.sigma;
        xi0 = std::clamp(pwm.xi, -0.5, 0.5);
    } catch (const Error&) {
    }

    const std::size_t n_dep = prototype.n_params();
    auto objective = [&](std::span<const double> x) -> double {
        const double sigma = std::exp(x[0]);
        const double xi = x[1];
        if (!(sigma > 0.0) || xi <= -1.0 || !std::isfinite(xi)) return kInf;
        MarkovModel m;
        m.marginal = GpdParams{u, lambda_hat, sigma, xi};
        try {
            m.dep = from_unconstrained(prototype, x.subspan(2, n_dep));
            const double ll = chain_loglik(y, missing, m);
            return std::isfinite(ll) ? -ll : kInf;
        } catch (const Error&) {
            return kInf;
        }
    };

    std::vector<double> start{std::log(sigma0), xi0};
    {
        const std::vector<double> dep0 = to_unconstrained(prototype);
        start.insert(start.end(), dep0.begin(), dep0.end());
    }

    SimplexOptions opts;
    opts.tol = 1e-8;
    opts.max_iter = 2000;

    CounterRng rng(seed, /*stream=*/0x3d6f1a);
    MarkovFit fit;
    SimplexResult best;
    best.value = kInf;
    int iterations = 0;
    const int n_restarts = 3;
    for (int r = 0; r <= n_restarts; ++r) {
        std::vector<double> x0 = best.value < kInf ? best.x : start;
        if (r > 0)
            for (double& v : x0) v += (rng.next_uniform() - 0.5) * 0.6;
        SimplexResult res = minimize_simplex(objective, x0, opts);
        iterations += res.iterations;
        if (res.value < best.value || (res.value == best.value && res.converged)) best = res;
    }

    if (!std::isfinite(best.value))
        throw ConvergenceFailure("fit_markov: no admissible parameters found", best.x,
                                 best.value, kInf);
    if (!best.converged) {
        const double gnorm = gradient_norm(objective, best.x);
        if (gnorm > 1e-2)
            throw ConvergenceFailure("fit_markov: simplex did not converge", best.x,
                                     -best.value, gnorm);
    }

    fit.model.marginal = GpdParams{u, lambda_hat, std::exp(best.x[0]), best.x[1]};
    fit.model.dep =
        from_unconstrained(prototype, std::span<const double>(best.x).subspan(2, n_dep));
    fit.loglik = -best.value;
    fit.iterations = iterations;
    fit.restarts = n_restarts;
    fit.converged = true;
    fit.spread = best.spread;
    return fit;
}

namespace {

DependenceModel mid_domain(Family family) {
    switch (family) {
        case Family::log_: return DependenceModel::logistic(0.5);
        case Family::nlog: return DependenceModel::neg_logistic(1.0);
        case Family::mix: return DependenceModel::mixed(0.5);
        case Family::alog: return DependenceModel::asy_logistic(0.5, 0.5, 0.5);
        case Family::anlog: return DependenceModel::asy_neg_logistic(1.0, 0.5, 0.5);
        case Family::amix: return DependenceModel::asy_mixed(0.4, 0.1);
        case Family::combo:
            return DependenceModel::convex_combo(DependenceModel::asy_logistic(0.5, 0.5, 0.5),
                                                 DependenceModel::asy_neg_logistic(1.0, 0.5, 0.5),
                                                 0.5);
    }
    throw Error("unknown dependence family");
}

}  // namespace

MarkovFit fit_markov(const DailySeries& window, double u, Family family, std::uint64_t seed) {
    return fit_markov(std::span<const double>(window.values),
                      std::span<const std::uint8_t>(window.missing), u, mid_domain(family),
                      seed);
}

}  // namespace mcpot
