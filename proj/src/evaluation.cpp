#include "mcpot/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "mcpot/exindex.hpp"
#include "mcpot/likelihood.hpp"
#include "mcpot/quantiles.hpp"
#include "mcpot/rng.hpp"

namespace mcpot {

ScoreResult score(std::span<const double> estimates, double benchmark) {
    const std::size_t n = estimates.size();
    if (n < 2) throw InsufficientData("score: need at least 2 estimates");
    if (!(benchmark > 0.0)) throw Error("score: benchmark must be positive");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (estimates[i] - benchmark) / benchmark;

    ScoreResult r;
    r.n = n;
    const double nd = static_cast<double>(n);
    for (double x : d) r.nbias += x;
    r.nbias /= nd;
    for (double x : d) {
        r.var += (x - r.nbias) * (x - r.nbias);
        r.nmse += x * x;
    }
    r.var /= (nd - 1.0);
    r.nmse /= nd;

    // central moments of the normalized deviations
    double m2 = 0.0, m4 = 0.0, v2 = 0.0;
    for (double x : d) {
        const double c = x - r.nbias;
        m2 += c * c;
        m4 += c * c * c * c;
    }
    m2 /= nd;
    m4 /= nd;
    // spread of the squared deviations, for se(nmse)
    for (double x : d) v2 += (x * x - r.nmse) * (x * x - r.nmse);
    v2 /= (nd - 1.0);

    r.se_nbias = std::sqrt(std::max(0.0, m2 / (nd - 1.0)));
    r.se_var = std::sqrt(std::max(0.0, (m4 - m2 * m2 * (nd - 3.0) / (nd - 1.0)) / nd));
    r.se_nmse = std::sqrt(std::max(0.0, v2 / nd));
    return r;
}

namespace {

constexpr const char* kMle = "MLE";
constexpr const char* kPwu = "PWU";
constexpr const char* kPwb = "PWB";

double window_years_of(const DailySeries& s) {
    return static_cast<double>(s.size()) / kDaysPerYear;
}

// FNV-1a; seeds keyed by station id keep reports invariant under ordering.
std::uint64_t hash_str(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Conventional POT quantile: declustering, a GPD fit on cluster maxima, and
// the cluster-rate return level. The intervals method declusters with its own
// intervals estimate of the extremal index.
double pot_quantile(const DailySeries& series, double u, const std::string& estimator,
                    DeclusterMethod method, int run_gap, const ReturnSpec& spec) {
    const ExceedanceSet exc = exceedances(series, u);
    if (exc.count() == 0) throw InsufficientExceedances("pot_quantile: no exceedances");
    const ClusterSet clusters =
        method == DeclusterMethod::runs
            ? decluster_runs(exc, run_gap)
            : decluster_intervals(exc, ferro_segers(exc).theta);
    const double rate = static_cast<double>(clusters.count()) / window_years_of(series);
    const double lambda = exc.lambda_hat;

    GpdParams fit;
    if (estimator == kMle) {
        fit = fit_gpd_mle(clusters.maxima, u, lambda).params;
    } else {
        fit = fit_gpd_pwm(clusters.maxima, u, /*biased=*/estimator == kPwb, lambda);
    }
    return return_level_pot(fit, rate, spec);
}

}  // namespace

ExperimentResult run_experiment(std::span<const StationInput> stations,
                                const ExperimentConfig& config) {
    ExperimentResult result;

    std::vector<std::string> estimators;
    for (Family f : config.families) estimators.emplace_back(family_name(f));
    if (config.conventional) {
        estimators.emplace_back(kMle);
        estimators.emplace_back(kPwu);
        estimators.emplace_back(kPwb);
    }

    // (estimator, window_years, T) -> estimates / failure count
    struct Bucket {
        std::vector<double> estimates;
        std::vector<double> benchmarks;  // per-estimate station benchmark
        std::size_t failures = 0;
    };
    std::map<std::tuple<std::string, int, double>, Bucket> buckets;

    for (const StationInput& station : stations) {
        const double u = station.threshold;
        const std::uint64_t station_hash = hash_str(station.id);

        // Full-series conventional POT benchmark (MLE on cluster maxima). A
        // station whose benchmark cannot be computed contributes failures for
        // all of its windows instead of aborting the experiment.
        std::map<double, double> benchmark;
        std::string benchmark_error;
        try {
            for (double T : config.return_periods)
                benchmark[T] =
                    pot_quantile(station.series, u, kMle, config.decluster, config.run_gap,
                                 ReturnSpec{T, config.obs_per_year});
        } catch (const Error& err) {
            benchmark_error = std::string("benchmark: ") + err.what();
        }

        for (int wy : config.window_years) {
            const std::vector<DailySeries> windows = sliding_windows(station.series, wy);
            for (std::size_t w = 0; w < windows.size(); ++w) {
                for (std::size_t e = 0; e < estimators.size(); ++e) {
                    const std::string& est = estimators[e];
                    const std::uint64_t task_seed = CounterRng::derive(
                        config.seed, station_hash, static_cast<std::uint64_t>(w),
                        hash_str(est));

                    std::vector<double> qhats;
                    std::string error = benchmark_error;
                    try {
                        if (!error.empty()) throw Error(error);
                        const auto fam = family_from_name(est);
                        if (fam) {
                            MarkovFit fit = fit_markov(windows[w], u, *fam, task_seed);
                            SimConfig theta_cfg{config.theta_chains, config.theta_len,
                                                task_seed, config.theta_burn};
                            fit.model.theta = theta_pipeline(fit.model, theta_cfg).theta;
                            for (double T : config.return_periods)
                                qhats.push_back(return_level_markov(
                                    fit.model, ReturnSpec{T, config.obs_per_year}));
                        } else {
                            for (double T : config.return_periods)
                                qhats.push_back(
                                    pot_quantile(windows[w], u, est, config.decluster,
                                                 config.run_gap,
                                                 ReturnSpec{T, config.obs_per_year}));
                        }
                    } catch (const Error& err) {
                        error = err.what();
                        qhats.clear();
                    }

                    for (std::size_t t = 0; t < config.return_periods.size(); ++t) {
                        const double T = config.return_periods[t];
                        Bucket& bucket = buckets[{est, wy, T}];
                        WindowEstimate raw;
                        raw.station = station.id;
                        raw.window_index = w;
                        raw.estimator = est;
                        raw.return_period = T;
                        raw.ok = error.empty();
                        raw.error = error;
                        if (raw.ok) {
                            raw.q_hat = qhats[t];
                            bucket.estimates.push_back(qhats[t]);
                            bucket.benchmarks.push_back(benchmark[T]);
                        } else {
                            ++bucket.failures;
                        }
                        result.raw.push_back(std::move(raw));
                    }
                }
            }
        }
    }

    for (auto& [key, bucket] : buckets) {
        const auto& [est, wy, T] = key;
        ReportRow row;
        row.estimator = est;
        row.window_years = wy;
        row.return_period = T;
        row.failures = bucket.failures;
        if (bucket.estimates.size() >= 2) {
            // station benchmarks differ, so score on pre-normalized deviations;
            // sorted so the aggregate is bit-stable under station reordering
            std::vector<double> scaled(bucket.estimates.size());
            for (std::size_t i = 0; i < scaled.size(); ++i)
                scaled[i] = bucket.estimates[i] / bucket.benchmarks[i];
            std::sort(scaled.begin(), scaled.end());
            row.stats = score(scaled, 1.0);
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace mcpot
