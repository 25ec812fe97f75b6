#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mcpot {

struct SimplexOptions {
    double tol = 1e-9;     // stop when the value spread across the simplex is below this
    int max_iter = 5000;   // iteration cap per run
    double step = 0.5;     // initial simplex edge length along each axis
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double spread = 0.0;  // final |f_worst - f_best|, the gradient-free diagnostic
};

/// Nelder-Mead minimization. The objective may return +inf to reject a point.
SimplexResult minimize_simplex(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> x0, const SimplexOptions& opts = {});

/// Central-difference gradient norm, used in convergence reports.
double gradient_norm(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> x, double h = 1e-6);

}  // namespace mcpot
