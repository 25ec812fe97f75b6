#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mcpot/gpd.hpp"
#include "mcpot/rng.hpp"
#include "mcpot/series.hpp"

namespace mcpot::test {

inline DailySeries make_series(std::vector<double> values,
                               std::vector<std::uint8_t> missing = {}) {
    DailySeries s;
    s.station_id = "test";
    s.start_day = days_from_civil(2000, 1, 1);
    if (missing.empty()) missing.assign(values.size(), 0);
    s.values = std::move(values);
    s.missing = std::move(missing);
    return s;
}

/// Pure GPD exceedances above u by inverse transform.
inline std::vector<double> gpd_sample(std::size_t n, double u, double sigma, double xi,
                                      std::uint64_t seed) {
    CounterRng rng(seed, 0x97d);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = rng.next_uniform();  // survival probability
        double x;
        if (std::abs(xi) < 1e-12) {
            x = -sigma * std::log(v);
        } else {
            x = sigma / xi * (std::pow(v, -xi) - 1.0);
        }
        out.push_back(u + x);
    }
    return out;
}

}  // namespace mcpot::test
