#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mcpot/dependence.hpp"
#include "mcpot/series.hpp"

namespace mcpot {

/// Normalized error statistics of quantile estimates against a benchmark,
/// with delta-method standard errors on the sample moments.
struct ScoreResult {
    double nbias = 0.0, var = 0.0, nmse = 0.0;
    double se_nbias = 0.0, se_var = 0.0, se_nmse = 0.0;
    std::size_t n = 0;
};

ScoreResult score(std::span<const double> estimates, double benchmark);

struct ExperimentConfig {
    std::vector<int> window_years{5, 10, 15, 20};
    std::vector<double> return_periods{2, 10, 20, 50, 100};
    std::vector<Family> families{Family::log_, Family::nlog, Family::mix,
                                 Family::alog, Family::anlog, Family::amix};
    bool conventional = true;  // include the MLE / PWU / PWB competitors
    DeclusterMethod decluster = DeclusterMethod::runs;  // for the POT fits
    int run_gap = 2;  // gap for runs declustering
    int theta_chains = 20;     // reduced pipeline defaults for desk-scale runs
    int theta_len = 1000;
    int theta_burn = 100;
    double obs_per_year = 365.25;
    std::uint64_t seed = 0;
};

struct StationInput {
    std::string id;
    DailySeries series;
    double threshold = 0.0;
};

struct WindowEstimate {
    std::string station;
    std::size_t window_index = 0;
    std::string estimator;
    double return_period = 0.0;
    double q_hat = 0.0;
    bool ok = false;
    std::string error;
};

struct ReportRow {
    std::string estimator;
    int window_years = 0;
    double return_period = 0.0;
    ScoreResult stats;
    std::size_t failures = 0;
};

struct ExperimentResult {
    std::vector<ReportRow> rows;
    std::vector<WindowEstimate> raw;
};

/// Sub-series benchmarking protocol: a full-series conventional POT benchmark
/// per station and return period, every year-aligned window of each requested
/// length, the Markovian estimators (censored fit + theta pipeline + Markov
/// return level) and optionally MLE/PWU/PWB on declustered cluster maxima;
/// scores aggregated across all windows of all stations. Failures are
/// excluded and counted.
ExperimentResult run_experiment(std::span<const StationInput> stations,
                                const ExperimentConfig& config);

}  // namespace mcpot
