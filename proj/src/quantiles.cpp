#include "mcpot/quantiles.hpp"

#include <cmath>

namespace mcpot {

namespace {

void check_spec(const ReturnSpec& spec) {
    if (!(spec.return_period > 1.0)) throw Error("return level: T must exceed 1 year");
    if (!(spec.obs_per_year > 0.0)) throw Error("return level: obs_per_year must be positive");
}

}  // namespace

double return_level_markov(const MarkovModel& model, const ReturnSpec& spec) {
    check_spec(spec);
    validate(model.marginal);
    if (!model.theta) throw Error("return_level_markov: extremal index not set");
    const double theta = *model.theta;
    if (!(theta > 0.0) || theta > 1.0)
        throw Error("return_level_markov: theta must lie in (0, 1]");

    const GpdParams& p = model.marginal;
    // F(Q)^(n*theta) = 1 - 1/T  =>  lambda * t(Q) = 1 - (1-1/T)^(1/(n*theta))
    const double exponent = 1.0 / (spec.obs_per_year * theta);
    const double tail = -std::expm1(exponent * std::log1p(-1.0 / spec.return_period));
    const double bracket = tail / p.lambda;  // t(Q) = (1 + xi(Q-u)/sigma)^(-1/xi)
    if (!(bracket > 0.0) || bracket >= 1.0)
        throw QuantileBelowThreshold(
            "return_level_markov: requested level falls at or below the threshold");
    if (std::abs(p.xi) < kXiZeroTol) return p.u - p.sigma * std::log(bracket);
    return p.u - p.sigma / p.xi * (1.0 - std::pow(bracket, -p.xi));
}

double return_level_pot(const GpdParams& marginal, double cluster_rate, const ReturnSpec& spec) {
    check_spec(spec);
    validate(marginal);
    if (!(cluster_rate > 0.0)) throw Error("return_level_pot: cluster_rate must be positive");
    const double events = spec.return_period * cluster_rate;
    if (events <= 1.0)
        throw QuantileBelowThreshold(
            "return_level_pot: T * cluster_rate <= 1 event, level below the threshold");
    if (std::abs(marginal.xi) < kXiZeroTol) return marginal.u + marginal.sigma * std::log(events);
    return marginal.u + marginal.sigma / marginal.xi * (std::pow(events, marginal.xi) - 1.0);
}

}  // namespace mcpot
