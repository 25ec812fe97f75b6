#include "mcpot/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mcpot {

SimplexResult minimize_simplex(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> x0, const SimplexOptions& opts) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < n; ++i)
        pts[i + 1][i] += (pts[i + 1][i] != 0.0 ? opts.step * std::abs(pts[i + 1][i]) : opts.step);

    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    SimplexResult res;
    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        sort_simplex();
        const std::size_t lo = order[0], hi = order[n];
        res.spread = std::abs(fv[hi] - fv[lo]);
        if (std::isfinite(fv[lo]) && res.spread <= opts.tol * (std::abs(fv[lo]) + opts.tol)) {
            res.converged = true;
            break;
        }

        // centroid of all but the worst point
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == hi) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](std::vector<double>& out, double t) {
            for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (pts[hi][j] - centroid[j]);
        };

        blend(xr, -1.0);  // reflection
        const double fr = f(xr);
        if (fr < fv[order[0]]) {
            blend(xe, -2.0);  // expansion
            const double fe = f(xe);
            if (fe < fr) {
                pts[hi] = xe;
                fv[hi] = fe;
            } else {
                pts[hi] = xr;
                fv[hi] = fr;
            }
        } else if (fr < fv[order[n - 1]]) {
            pts[hi] = xr;
            fv[hi] = fr;
        } else {
            const bool outside = fr < fv[hi];
            blend(xc, outside ? -0.5 : 0.5);  // contraction
            const double fc = f(xc);
            if (fc < std::min(fr, fv[hi])) {
                pts[hi] = xc;
                fv[hi] = fc;
            } else {
                // shrink toward the best point
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        pts[i][j] = pts[lo][j] + 0.5 * (pts[i][j] - pts[lo][j]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }

    sort_simplex();
    res.x = pts[order[0]];
    res.value = fv[order[0]];
    res.iterations = iter;
    res.spread = std::abs(fv[order[n]] - fv[order[0]]);
    return res;
}

double gradient_norm(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> x, double h) {
    std::vector<double> p(x.begin(), x.end());
    double ss = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double step = h * std::max(1.0, std::abs(p[i]));
        const double keep = p[i];
        p[i] = keep + step;
        const double fp = f(p);
        p[i] = keep - step;
        const double fm = f(p);
        p[i] = keep;
        if (std::isfinite(fp) && std::isfinite(fm)) {
            const double g = (fp - fm) / (2.0 * step);
            ss += g * g;
        }
    }
    return std::sqrt(ss);
}

}  // namespace mcpot
