#include "mcpot/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace mcpot {

namespace {

std::int64_t year_boundary(int k) {
    return std::llround(static_cast<double>(k) * kDaysPerYear);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_iso_date(std::string_view s, std::int64_t& day) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    int y = 0, m = 0, d = 0;
    auto num = [](std::string_view f, int& v) {
        auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        return ec == std::errc{} && p == f.data() + f.size();
    };
    if (!num(s.substr(0, 4), y) || !num(s.substr(5, 2), m) || !num(s.substr(8, 2), d))
        return false;
    if (m < 1 || m > 12 || d < 1 || d > 31) return false;
    day = days_from_civil(y, m, d);
    return true;
}

}  // namespace

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = static_cast<int>(y + (month <= 2));
}

std::string iso_date(std::int64_t days) {
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

std::size_t DailySeries::unmasked_count() const {
    std::size_t n = 0;
    for (bool miss : missing)
        if (!miss) ++n;
    return n;
}

DailySeries parse_series(std::istream& in, std::string station_id) {
    DailySeries s;
    s.station_id = std::move(station_id);

    std::string line;
    if (!std::getline(in, line)) throw Error("parse_series: empty input");
    if (trim(line) != "date,discharge")
        throw Error("parse_series: expected header 'date,discharge'");

    std::size_t row = 0;
    std::int64_t prev_day = 0;
    bool first = true;
    while (std::getline(in, line)) {
        const std::string_view lv = trim(line);
        if (lv.empty()) {
            ++row;
            continue;
        }
        const std::size_t comma = lv.find(',');
        if (comma == std::string_view::npos) throw ParseError("parse_series: missing comma", row);
        std::int64_t day = 0;
        if (!parse_iso_date(trim(lv.substr(0, comma)), day))
            throw ParseError("parse_series: malformed date", row);

        const std::string_view field = trim(lv.substr(comma + 1));
        double value = 0.0;
        bool miss = field.empty();
        if (!miss) {
            if (!parse_number(field, value) || !std::isfinite(value))
                throw ParseError("parse_series: malformed discharge", row);
            if (value < 0.0) throw ParseError("parse_series: negative discharge", row);
        }

        if (first) {
            s.start_day = day;
            first = false;
        } else {
            if (day <= prev_day) throw ParseError("parse_series: non-increasing date", row);
            for (std::int64_t g = prev_day + 1; g < day; ++g) {  // fill calendar gaps
                s.values.push_back(0.0);
                s.missing.push_back(true);
            }
        }
        s.values.push_back(miss ? 0.0 : value);
        s.missing.push_back(miss);
        prev_day = day;
        ++row;
    }
    if (s.values.empty()) throw Error("parse_series: no data rows");
    return s;
}

std::vector<DailySeries> sliding_windows(const DailySeries& series, int window_years) {
    if (window_years < 1) throw Error("sliding_windows: window_years must be >= 1");
    std::vector<DailySeries> out;
    const std::int64_t n = static_cast<std::int64_t>(series.size());
    for (int k = 0;; ++k) {
        const std::int64_t lo = year_boundary(k);
        const std::int64_t hi = year_boundary(k + window_years);
        if (hi > n) break;
        DailySeries w;
        w.station_id = series.station_id;
        w.start_day = series.start_day + lo;
        w.values.assign(series.values.begin() + lo, series.values.begin() + hi);
        w.missing.assign(series.missing.begin() + lo, series.missing.begin() + hi);
        out.push_back(std::move(w));
    }
    return out;
}

ExceedanceSet exceedances(const DailySeries& series, double u) {
    if (!std::isfinite(u)) throw Error("exceedances: threshold must be finite");
    ExceedanceSet e;
    e.threshold = u;
    e.n_total = series.size();
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.missing[i]) continue;
        ++e.n_unmasked;
        if (series.values[i] > u) {
            e.indices.push_back(i);
            e.values.push_back(series.values[i]);
        }
    }
    if (e.n_unmasked == 0) throw Error("exceedances: no unmasked values");
    e.lambda_hat = static_cast<double>(e.count()) / static_cast<double>(e.n_unmasked);
    return e;
}

namespace {

ClusterSet clusters_from_breaks(const ExceedanceSet& exc, const std::vector<bool>& break_after,
                                DeclusterMethod method) {
    ClusterSet cs;
    cs.method = method;
    const std::size_t n = exc.count();
    std::size_t begin = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool last = i + 1 == n;
        if (last || break_after[i]) {
            cs.clusters.emplace_back(exc.indices[begin], exc.indices[i]);
            double mx = exc.values[begin];
            for (std::size_t j = begin + 1; j <= i; ++j) mx = std::max(mx, exc.values[j]);
            cs.maxima.push_back(mx);
            begin = i + 1;
        }
    }
    return cs;
}

}  // namespace

ClusterSet decluster_runs(const ExceedanceSet& exc, int run_gap) {
    if (run_gap < 1) throw Error("decluster_runs: run_gap must be >= 1");
    const std::size_t n = exc.count();
    std::vector<bool> break_after(n, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t gap = exc.indices[i + 1] - exc.indices[i];
        break_after[i] = gap > static_cast<std::size_t>(run_gap);
    }
    return clusters_from_breaks(exc, break_after, DeclusterMethod::runs);
}

ClusterSet decluster_intervals(const ExceedanceSet& exc, double theta_hat) {
    if (!(theta_hat > 0.0) || theta_hat > 1.0)
        throw Error("decluster_intervals: theta_hat must lie in (0, 1]");
    const std::size_t n = exc.count();
    std::vector<bool> break_after(n, false);
    if (n >= 2) {
        const std::size_t c =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(
                                         theta_hat * static_cast<double>(n))));
        // rank inter-exceedance times, largest first, earliest wins ties
        std::vector<std::size_t> order(n - 1);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const std::size_t ga = exc.indices[a + 1] - exc.indices[a];
            const std::size_t gb = exc.indices[b + 1] - exc.indices[b];
            if (ga != gb) return ga > gb;
            return a < b;
        });
        for (std::size_t i = 0; i + 1 < c && i < order.size(); ++i) break_after[order[i]] = true;
    }
    return clusters_from_breaks(exc, break_after, DeclusterMethod::intervals);
}

double empirical_quantile(std::span<const double> values, double p) {
    if (values.empty()) throw Error("empirical_quantile: empty sample");
    if (!(p >= 0.0) || !(p <= 1.0)) throw Error("empirical_quantile: p must lie in [0, 1]");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double h = p * (static_cast<double>(v.size()) - 1.0);
    const std::size_t i = static_cast<std::size_t>(std::floor(h));
    if (i + 1 >= v.size()) return v.back();
    return v[i] + (h - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

double resolve_threshold(const DailySeries& series, std::string_view spec) {
    if (spec.rfind("q:", 0) == 0) {
        double p = 0.0;
        if (!parse_number(spec.substr(2), p) || !(p >= 0.0) || !(p <= 1.0))
            throw Error("threshold: expected q:<p> with p in [0, 1]");
        std::vector<double> vals;
        vals.reserve(series.size());
        for (std::size_t i = 0; i < series.size(); ++i)
            if (!series.missing[i]) vals.push_back(series.values[i]);
        if (vals.empty()) throw Error("threshold: series has no unmasked values");
        return empirical_quantile(vals, p);
    }
    double u = 0.0;
    if (!parse_number(spec, u)) throw Error("threshold: expected a number or q:<p>");
    return u;
}

}  // namespace mcpot
