#include "mcpot/hydrograph.hpp"

#include <algorithm>
#include <cmath>

namespace mcpot {

namespace {

// Per-year peak-centered events from a daily array. `missing` invalidates
// windows it touches; `peak_eligible` restricts which days may carry the peak.
EventExtraction extract_events(std::span<const double> values, std::span<const std::uint8_t> missing,
                               std::span<const std::uint8_t> peak_eligible, int half_width,
                               double days_per_year) {
    if (half_width < 1) throw Error("extract_annual_events: half_width must be >= 1");
    EventExtraction out;
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    const int w = half_width;

    for (int year = 0;; ++year) {
        const std::int64_t lo = std::llround(year * days_per_year);
        const std::int64_t hi = std::llround((year + 1) * days_per_year);
        if (hi > n) break;

        std::int64_t peak_idx = -1;
        for (std::int64_t i = lo; i < hi; ++i) {
            if (!peak_eligible[i]) continue;
            if (peak_idx < 0 || values[i] > values[peak_idx]) peak_idx = i;
        }
        if (peak_idx < 0 || !(values[peak_idx] > 0.0)) {
            ++out.dropped_years;
            continue;
        }

        const std::int64_t a = peak_idx - w, b = peak_idx + w;
        bool ok = a >= 0 && b < n;
        for (std::int64_t i = a; ok && i <= b; ++i)
            ok = !missing[i] && values[i] <= values[peak_idx];
        if (!ok) {
            ++out.dropped_years;  // window leaves the data, hits a gap, or a
            continue;             // neighbouring year's larger event spills in
        }

        NormalizedHydrograph h;
        h.half_width = w;
        h.ratios.reserve(2 * w + 1);
        for (std::int64_t i = a; i <= b; ++i) h.ratios.push_back(values[i] / values[peak_idx]);
        out.events.push_back(std::move(h));
    }
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EventExtraction extract_annual_events(const DailySeries& series, int half_width) {
    std::vector<std::uint8_t> eligible(series.missing.size());
    for (std::size_t i = 0; i < eligible.size(); ++i) eligible[i] = !series.missing[i];
    return extract_events(std::span<const double>(series.values),
                          std::span<const std::uint8_t>(series.missing),
                          std::span<const std::uint8_t>(eligible), half_width, kDaysPerYear);
}

double duration_above_half(std::span<const double> curve) {
    if (curve.empty()) throw Error("duration_above_half: empty curve");
    const double level = 0.5;
    double days = 0.0;
    // each end sample represents its half-day stub
    if (curve.front() > level) days += 0.5;
    if (curve.back() > level) days += 0.5;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const double a = curve[i], b = curve[i + 1];
        if (a > level && b > level) {
            days += 1.0;
        } else if (a > level || b > level) {
            const double c = (level - a) / (b - a);  // crossing point in [0, 1]
            days += a > level ? c : 1.0 - c;
        }
    }
    return days;
}

std::vector<double> mean_curve(std::span<const NormalizedHydrograph> events) {
    if (events.empty()) throw Error("mean_curve: no events");
    const std::size_t len = events.front().ratios.size();
    std::vector<double> mean(len, 0.0);
    for (const NormalizedHydrograph& h : events) {
        if (h.ratios.size() != len) throw Error("mean_curve: mixed half widths");
        for (std::size_t i = 0; i < len; ++i) mean[i] += h.ratios[i];
    }
    for (double& m : mean) m /= static_cast<double>(events.size());
    return mean;
}

double d_mean(std::span<const NormalizedHydrograph> events) {
    return duration_above_half(mean_curve(events));
}

double d_med(std::span<const NormalizedHydrograph> events) {
    if (events.empty()) throw Error("d_med: no events");
    std::vector<double> durations;
    durations.reserve(events.size());
    for (const NormalizedHydrograph& h : events)
        durations.push_back(duration_above_half(h.ratios));
    return median(std::move(durations));
}

SimulatedDurations simulated_durations(const MarkovModel& model, const SimConfig& cfg,
                                       int half_width, double obs_per_year) {
    const std::vector<SimulatedChain> chains = simulate_chains(model, cfg);

    std::vector<NormalizedHydrograph> events;
    SimulatedDurations out;
    for (const SimulatedChain& chain : chains) {
        // Censored steps carry the threshold marker (a u/peak floor in the
        // ratios); only genuine exceedances may be peaks.
        const std::vector<std::uint8_t> no_gaps(chain.size(), 0);
        EventExtraction ex = extract_events(std::span<const double>(chain.values),
                                            std::span<const std::uint8_t>(no_gaps),
                                            std::span<const std::uint8_t>(chain.exceeds),
                                            half_width, obs_per_year);
        out.dropped_years += ex.dropped_years;
        for (NormalizedHydrograph& h : ex.events) events.push_back(std::move(h));
    }
    if (events.empty())
        throw InsufficientData("simulated_durations: no admissible simulated events");

    out.curve = mean_curve(events);
    out.d_mean = duration_above_half(out.curve);
    out.d_med = d_med(events);
    out.n_events = events.size();
    return out;
}

}  // namespace mcpot
