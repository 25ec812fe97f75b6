#pragma once

#include <span>
#include <vector>

#include "mcpot/series.hpp"
#include "mcpot/simulate.hpp"

namespace mcpot {

enum class ThetaMethod { intervals, pipeline };

struct ThetaEstimate {
    double theta = 1.0;
    std::size_t n_exceedances = 0;
    ThetaMethod method = ThetaMethod::intervals;
    std::vector<double> per_chain;  // pipeline only
};

/// Intervals estimator of the extremal index from exceedance times
/// (Ferro & Segers 2003 style, on inter-exceedance times T_i = S_{i+1} - S_i).
/// Estimates are capped at 1 and floored at 1e-6.
ThetaEstimate ferro_segers(std::span<const std::size_t> exceedance_indices);
ThetaEstimate ferro_segers(const ExceedanceSet& exc);

/// Simulation-averaged extremal index: simulate cfg.n_chains chains from the
/// fitted model, estimate theta per chain with the intervals estimator, and
/// average. Chains with fewer than 2 exceedances are skipped.
ThetaEstimate theta_pipeline(const MarkovModel& model, const SimConfig& cfg);

/// Runs-declustering estimator (clusters / exceedances), kept as a
/// cross-check only.
double runs_theta(const ExceedanceSet& exc, int run_gap);

}  // namespace mcpot
