#include "mcpot/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcpot/rng.hpp"

namespace mcpot {

namespace {

double conditional_cdf_unchecked(double z2, double z1, const DependenceModel& dep) {
    const VDerivatives d = eval_v(z1, z2, dep);
    const double log_cond = std::log(-d.v1) - d.v - (-2.0 * std::log(z1) - 1.0 / z1);
    return std::exp(log_cond);
}

void check_sim_config(const SimConfig& cfg) {
    if (cfg.n_chains < 1 || cfg.chain_len < 1 || cfg.burn_in < 0)
        throw Error("simulate: counts must be positive");
    if (cfg.chain_len <= cfg.burn_in) throw Error("simulate: chain_len must exceed burn_in");
}

}  // namespace

double conditional_cdf(double z2, double z1, const DependenceModel& dep) {
    dep.validate();
    if (!(z1 > 0.0) || !(z2 > 0.0)) throw Error("conditional_cdf: coordinates must be positive");
    const double p = conditional_cdf_unchecked(z2, z1, dep);
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw Error("conditional_cdf: value " + std::to_string(p) + " outside [0, 1]");
    return std::clamp(p, 0.0, 1.0);
}

double sample_next(double z1, const DependenceModel& dep, double draw) {
    if (!(draw > 0.0) || !(draw < 1.0)) throw Error("sample_next: draw must lie in (0, 1)");
    if (!(z1 > 0.0)) throw Error("sample_next: z1 must be positive");

    double lo = 1e-9;
    double hi = std::max({1.0, z1, -1.0 / std::log(draw)});
    int grow = 0;
    while (conditional_cdf_unchecked(hi, z1, dep) < draw) {
        hi *= 4.0;
        if (++grow > 300)
            throw BracketFailure("sample_next: no upper bracket (z1 = " + std::to_string(z1) +
                                 ", draw = " + std::to_string(draw) + ")");
    }
    if (conditional_cdf_unchecked(lo, z1, dep) > draw)
        throw BracketFailure("sample_next: no lower bracket (z1 = " + std::to_string(z1) +
                             ", draw = " + std::to_string(draw) + ")");

    while (hi - lo > 1e-10 * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval below double resolution
        (conditional_cdf_unchecked(mid, z1, dep) < draw ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SimulatedChain simulate_chain(const MarkovModel& model, const SimConfig& cfg, int chain_index) {
    check_sim_config(cfg);
    validate(model.marginal);
    model.dep.validate();
    if (!(model.marginal.lambda > 0.0)) throw Error("simulate: lambda must be positive");

    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(chain_index));
    const GpdParams& p = model.marginal;

    SimulatedChain out;
    out.threshold = p.u;
    const int keep = cfg.chain_len - cfg.burn_in;
    out.values.reserve(keep);
    out.exceeds.reserve(keep);

    double z = -1.0 / std::log(rng.next_uniform());  // unit-Frechet start
    for (int step = 0; step < cfg.chain_len; ++step) {
        if (step > 0) z = sample_next(z, model.dep, rng.next_uniform());
        if (step < cfg.burn_in) continue;
        const double v = std::exp(-1.0 / z);  // uniform scale
        if (v > 1.0 - p.lambda) {
            out.values.push_back(gpd_quantile(std::min(v, 1.0 - 1e-16), p));
            out.exceeds.push_back(true);
        } else {
            out.values.push_back(p.u);  // below-threshold marker
            out.exceeds.push_back(false);
        }
    }
    return out;
}

std::vector<SimulatedChain> simulate_chains(const MarkovModel& model, const SimConfig& cfg) {
    check_sim_config(cfg);
    std::vector<SimulatedChain> chains;
    chains.reserve(cfg.n_chains);
    for (int k = 0; k < cfg.n_chains; ++k) chains.push_back(simulate_chain(model, cfg, k));
    return chains;
}

}  // namespace mcpot
