#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcpot/errors.hpp"

namespace mcpot {

/// Days elapsed since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(int year, int month, int day);
void civil_from_days(std::int64_t days, int& year, int& month, int& day);
std::string iso_date(std::int64_t days);

/// Average year length used for window alignment and annualized rates.
inline constexpr double kDaysPerYear = 365.25;

/// Daily discharge record for one station. Gaps are kept in place and marked
/// in `missing`; `values[i]` is meaningful only where `missing[i]` is false.
struct DailySeries {
    std::string station_id;
    std::int64_t start_day = 0;  // serial day of values[0]
    std::vector<double> values;
    std::vector<std::uint8_t> missing;  // 1 = missing

    std::size_t size() const { return values.size(); }
    std::size_t unmasked_count() const;
};

/// Parse the `date,discharge` CSV format. Dates must be strictly increasing;
/// calendar gaps are filled with masked entries; an empty discharge field
/// marks a missing day.
DailySeries parse_series(std::istream& in, std::string station_id);

/// Every year-aligned window of `window_years` years, stepping by one year.
/// Shorter-than-window series yield an empty result.
std::vector<DailySeries> sliding_windows(const DailySeries& series, int window_years);

struct ExceedanceSet {
    double threshold = 0.0;
    std::vector<std::size_t> indices;  // positions within the parent window
    std::vector<double> values;
    std::size_t n_total = 0;     // parent window length (masked days included)
    std::size_t n_unmasked = 0;  // lambda_hat denominator
    double lambda_hat = 0.0;

    std::size_t count() const { return indices.size(); }
};

/// Strict exceedances (value > u) over unmasked days; lambda_hat = N / unmasked.
ExceedanceSet exceedances(const DailySeries& series, double u);

enum class DeclusterMethod { runs, intervals };

struct ClusterSet {
    // [first, last] series positions of each cluster's exceedances, in order.
    std::vector<std::pair<std::size_t, std::size_t>> clusters;
    std::vector<double> maxima;
    DeclusterMethod method = DeclusterMethod::runs;

    std::size_t count() const { return clusters.size(); }
};

/// Runs declustering: exceedances separated by a calendar gap <= run_gap are
/// merged (gaps spanning masked days count their full calendar length).
ClusterSet decluster_runs(const ExceedanceSet& exc, int run_gap);

/// Intervals declustering (Ferro & Segers 2003): the C-1 largest
/// inter-exceedance times separate C = max(1, floor(theta_hat * N)) clusters;
/// ties broken by the earliest separator.
ClusterSet decluster_intervals(const ExceedanceSet& exc, double theta_hat);

/// Empirical quantile with linear interpolation between order statistics.
double empirical_quantile(std::span<const double> values, double p);

/// Threshold specification: an absolute value, or "q:<p>" for the p-th
/// empirical quantile of the unmasked values.
double resolve_threshold(const DailySeries& series, std::string_view spec);

}  // namespace mcpot
