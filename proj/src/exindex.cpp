#include "mcpot/exindex.hpp"

#include <algorithm>
#include <cmath>

namespace mcpot {

ThetaEstimate ferro_segers(std::span<const std::size_t> exceedance_indices) {
    const std::size_t n = exceedance_indices.size();
    if (n < 2) throw InsufficientExceedances("ferro_segers: need at least 2 exceedances");

    double sum_t = 0.0, sum_t2 = 0.0, sum_tm1 = 0.0, sum_tm1_tm2 = 0.0;
    std::size_t max_t = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (exceedance_indices[i + 1] <= exceedance_indices[i])
            throw Error("ferro_segers: exceedance times must be strictly increasing");
        const double t =
            static_cast<double>(exceedance_indices[i + 1] - exceedance_indices[i]);
        max_t = std::max(max_t, exceedance_indices[i + 1] - exceedance_indices[i]);
        sum_t += t;
        sum_t2 += t * t;
        sum_tm1 += t - 1.0;
        sum_tm1_tm2 += (t - 1.0) * (t - 2.0);
    }

    const double n1 = static_cast<double>(n - 1);
    double theta;
    if (max_t <= 2) {
        theta = 2.0 * sum_tm1 * sum_tm1 / (n1 * sum_t2);
    } else {
        theta = 2.0 * sum_t * sum_t / (n1 * sum_tm1_tm2);
    }
    ThetaEstimate est;
    est.theta = std::max(1e-6, std::min(1.0, theta));
    est.n_exceedances = n;
    est.method = ThetaMethod::intervals;
    return est;
}

ThetaEstimate ferro_segers(const ExceedanceSet& exc) {
    return ferro_segers(std::span<const std::size_t>(exc.indices));
}

ThetaEstimate theta_pipeline(const MarkovModel& model, const SimConfig& cfg) {
    const std::vector<SimulatedChain> chains = simulate_chains(model, cfg);

    ThetaEstimate est;
    est.method = ThetaMethod::pipeline;
    double sum = 0.0;
    for (const SimulatedChain& chain : chains) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < chain.size(); ++i)
            if (chain.exceeds[i]) idx.push_back(i);
        if (idx.size() < 2) continue;  // chain carries no inter-exceedance information
        const ThetaEstimate one = ferro_segers(idx);
        est.per_chain.push_back(one.theta);
        est.n_exceedances += one.n_exceedances;
        sum += one.theta;
    }
    if (est.per_chain.empty())
        throw InsufficientExceedances("theta_pipeline: no chain produced 2+ exceedances");
    est.theta = sum / static_cast<double>(est.per_chain.size());
    return est;
}

double runs_theta(const ExceedanceSet& exc, int run_gap) {
    if (exc.count() == 0) throw InsufficientExceedances("runs_theta: no exceedances");
    const ClusterSet cs = decluster_runs(exc, run_gap);
    return static_cast<double>(cs.count()) / static_cast<double>(exc.count());
}

}  // namespace mcpot
