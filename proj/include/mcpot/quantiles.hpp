#pragma once

#include "mcpot/likelihood.hpp"

namespace mcpot {

struct ReturnSpec {
    double return_period;           // T, in years; must exceed 1
    double obs_per_year = 365.25;   // n in the annual-maximum approximation
};

/// T-year return level under temporal dependence: equate F(y)^(n*theta) to
/// 1 - 1/T and invert the GPD margin. Requires model.theta.
double return_level_markov(const MarkovModel& model, const ReturnSpec& spec);

/// Conventional POT return level from declustered cluster maxima:
/// Q_T = u + sigma/xi * ((T * cluster_rate)^xi - 1), cluster_rate in events
/// per year.
double return_level_pot(const GpdParams& marginal, double cluster_rate, const ReturnSpec& spec);

}  // namespace mcpot
