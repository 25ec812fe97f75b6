#pragma once

#include <span>
#include <vector>

#include "mcpot/series.hpp"
#include "mcpot/simulate.hpp"

namespace mcpot {

/// Flood event normalized by its peak: ratios over day offsets
/// [-half_width, +half_width], with ratio 1 at the central peak.
struct NormalizedHydrograph {
    int half_width = 15;
    std::vector<double> ratios;  // length 2 * half_width + 1
};

struct EventExtraction {
    std::vector<NormalizedHydrograph> events;
    std::size_t dropped_years = 0;
};

/// One event per complete year: the annual maximum with +-W days around it,
/// normalized by the peak. Years are dropped (and counted) when the window
/// leaves the series, crosses masked days, or contains a larger neighbouring
/// event.
EventExtraction extract_annual_events(const DailySeries& series, int half_width = 15);

/// Days spent above 0.5 by a sampled curve; crossings are linearly
/// interpolated and each end sample carries its half-day stub.
double duration_above_half(std::span<const double> curve);

std::vector<double> mean_curve(std::span<const NormalizedHydrograph> events);

/// Duration above 0.5 of the pointwise mean curve.
double d_mean(std::span<const NormalizedHydrograph> events);

/// Median of the per-event durations above 0.5.
double d_med(std::span<const NormalizedHydrograph> events);

struct SimulatedDurations {
    double d_mean = 0.0;
    double d_med = 0.0;
    std::vector<double> curve;  // mean normalized hydrograph of the simulation
    std::size_t n_events = 0;
    std::size_t dropped_years = 0;
};

/// Annual-event durations of chains simulated from the model; censored steps
/// contribute the conservative floor ratio u / peak.
SimulatedDurations simulated_durations(const MarkovModel& model, const SimConfig& cfg,
                                       int half_width = 15, double obs_per_year = 365.25);

}  // namespace mcpot
