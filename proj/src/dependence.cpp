#include "mcpot/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Numerical guards excluding the degenerate perfect-dependence limits
// (logistic-type alpha -> 0, negative-logistic-type alpha -> +inf).
constexpr double kAlphaFloor = 1e-6;
constexpr double kAlphaCap = 1e6;

double logsumexp2(double a, double b) {
    const double m = std::max(a, b);
    if (m == -kInf) return -kInf;
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

double logit(double p) {
    const double q = std::clamp(p, 1e-13, 1.0 - 1e-13);
    return std::log(q) - std::log1p(-q);
}

double expit(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// amix theta range at a given alpha (the constraint polygon's vertical slice).
void amix_theta_range(double alpha, double& lo, double& hi) {
    lo = -alpha / 3.0;
    hi = alpha <= 1.0 ? 0.5 * (1.0 - alpha) : 1.0 - alpha;
}

struct VEval {
    double v, v1, v2, v12;
};

VEval eval_all(double z1, double z2, const DependenceModel& m);

VEval eval_log(double x, double y, double alpha) {
    const double lx = std::log(x), ly = std::log(y);
    const double L = logsumexp2(-lx / alpha, -ly / alpha);
    VEval e;
    e.v = std::exp(alpha * L);
    e.v1 = -std::exp((-1.0 / alpha - 1.0) * lx + (alpha - 1.0) * L);
    e.v2 = -std::exp((-1.0 / alpha - 1.0) * ly + (alpha - 1.0) * L);
    e.v12 = alpha >= 1.0 ? 0.0
                         : -std::exp(std::log((1.0 - alpha) / alpha) +
                                     (-1.0 / alpha - 1.0) * (lx + ly) + (alpha - 2.0) * L);
    return e;
}

VEval eval_nlog(double x, double y, double alpha) {
    const double lx = std::log(x), ly = std::log(y);
    const double LB = logsumexp2(alpha * lx, alpha * ly);
    VEval e;
    e.v = 1.0 / x + 1.0 / y - std::exp(-LB / alpha);
    e.v1 = -1.0 / (x * x) + std::exp((alpha - 1.0) * lx + (-1.0 / alpha - 1.0) * LB);
    e.v2 = -1.0 / (y * y) + std::exp((alpha - 1.0) * ly + (-1.0 / alpha - 1.0) * LB);
    e.v12 = -std::exp(std::log1p(alpha) + (alpha - 1.0) * (lx + ly) + (-1.0 / alpha - 2.0) * LB);
    return e;
}

VEval eval_mix(double x, double y, double alpha) {
    const double s = x + y;
    VEval e;
    e.v = 1.0 / x + 1.0 / y - alpha / s;
    e.v1 = -1.0 / (x * x) + alpha / (s * s);
    e.v2 = -1.0 / (y * y) + alpha / (s * s);
    e.v12 = -2.0 * alpha / (s * s * s);
    return e;
}

VEval eval_alog(double x, double y, double alpha, double t1, double t2) {
    if (t1 <= 0.0 && t2 <= 0.0) return eval_log(x, y, 1.0);  // exact independence
    const double lx = std::log(x), ly = std::log(y);
    const double lt1 = std::log(t1), lt2 = std::log(t2);  // -inf when a theta is 0
    const double L = logsumexp2((lt1 - lx) / alpha, (lt2 - ly) / alpha);
    VEval e;
    e.v = (1.0 - t1) / x + (1.0 - t2) / y + std::exp(alpha * L);
    e.v1 = -(1.0 - t1) / (x * x) -
           std::exp(lt1 / alpha + (-1.0 / alpha - 1.0) * lx + (alpha - 1.0) * L);
    e.v2 = -(1.0 - t2) / (y * y) -
           std::exp(lt2 / alpha + (-1.0 / alpha - 1.0) * ly + (alpha - 1.0) * L);
    e.v12 = (alpha >= 1.0 || t1 <= 0.0 || t2 <= 0.0)
                ? 0.0
                : -std::exp(std::log((1.0 - alpha) / alpha) + (lt1 + lt2) / alpha +
                            (-1.0 / alpha - 1.0) * (lx + ly) + (alpha - 2.0) * L);
    return e;
}

VEval eval_anlog(double x, double y, double alpha, double t1, double t2) {
    const double lx = std::log(x), ly = std::log(y);
    const double lt1 = std::log(t1), lt2 = std::log(t2);
    const double LB = logsumexp2(alpha * (lx - lt1), alpha * (ly - lt2));
    VEval e;
    e.v = 1.0 / x + 1.0 / y - std::exp(-LB / alpha);
    e.v1 = -1.0 / (x * x) +
           std::exp(-alpha * lt1 + (alpha - 1.0) * lx + (-1.0 / alpha - 1.0) * LB);
    e.v2 = -1.0 / (y * y) +
           std::exp(-alpha * lt2 + (alpha - 1.0) * ly + (-1.0 / alpha - 1.0) * LB);
    e.v12 = -std::exp(std::log1p(alpha) - alpha * (lt1 + lt2) + (alpha - 1.0) * (lx + ly) +
                      (-1.0 / alpha - 2.0) * LB);
    return e;
}

VEval eval_amix(double x, double y, double alpha, double theta) {
    const double s = x + y;
    const double num = (alpha + 2.0 * theta) * x + (alpha + theta) * y;
    VEval e;
    e.v = 1.0 / x + 1.0 / y - num / (s * s);
    e.v1 = -1.0 / (x * x) - (alpha + 2.0 * theta) / (s * s) + 2.0 * num / (s * s * s);
    e.v2 = -1.0 / (y * y) - (alpha + theta) / (s * s) + 2.0 * num / (s * s * s);
    e.v12 = (4.0 * alpha + 6.0 * theta) / (s * s * s) - 6.0 * num / (s * s * s * s);
    return e;
}

VEval eval_all(double z1, double z2, const DependenceModel& m) {
    switch (m.family) {
        case Family::log_:
            return eval_log(z1, z2, m.alpha);
        case Family::nlog:
            return eval_nlog(z1, z2, m.alpha);
        case Family::mix:
            return eval_mix(z1, z2, m.alpha);
        case Family::alog:
            return eval_alog(z1, z2, m.alpha, m.theta1, m.theta2);
        case Family::anlog:
            return eval_anlog(z1, z2, m.alpha, m.theta1, m.theta2);
        case Family::amix:
            return eval_amix(z1, z2, m.alpha, m.theta1);
        case Family::combo: {
            const VEval a = eval_all(z1, z2, m.parts[0]);
            const VEval b = eval_all(z1, z2, m.parts[1]);
            const double w1 = m.weight1, w2 = 1.0 - m.weight1;
            return {w1 * a.v + w2 * b.v, w1 * a.v1 + w2 * b.v1, w1 * a.v2 + w2 * b.v2,
                    w1 * a.v12 + w2 * b.v12};
        }
    }
    throw Error("unknown dependence family");
}

void require_pair(double z1, double z2) {
    if (!(z1 > 0.0) || !(z2 > 0.0)) throw Error("Frechet coordinates must be positive");
}

double pickands_impl(double w, const DependenceModel& m) {
    if (w <= 0.0 || w >= 1.0) return 1.0;
    const double lw = std::log(w), l1w = std::log1p(-w);
    switch (m.family) {
        case Family::log_:
            return std::exp(m.alpha * logsumexp2(l1w / m.alpha, lw / m.alpha));
        case Family::nlog:
            return 1.0 - std::exp(-logsumexp2(-m.alpha * l1w, -m.alpha * lw) / m.alpha);
        case Family::mix:
            return 1.0 - m.alpha * w * (1.0 - w);
        case Family::alog: {
            if (m.theta1 <= 0.0 && m.theta2 <= 0.0) return 1.0;
            const double lt1 = std::log(m.theta1), lt2 = std::log(m.theta2);
            return (1.0 - m.theta1) * (1.0 - w) + (1.0 - m.theta2) * w +
                   std::exp(m.alpha *
                            logsumexp2((lt1 + l1w) / m.alpha, (lt2 + lw) / m.alpha));
        }
        case Family::anlog: {
            const double lt1 = std::log(m.theta1), lt2 = std::log(m.theta2);
            return 1.0 - std::exp(-logsumexp2(-m.alpha * (lt1 + l1w), -m.alpha * (lt2 + lw)) /
                                  m.alpha);
        }
        case Family::amix: {
            const double a = m.alpha, t = m.theta1;
            return 1.0 - (a + t) * w + a * w * w + t * w * w * w;
        }
        case Family::combo:
            return m.weight1 * pickands_impl(w, m.parts[0]) +
                   (1.0 - m.weight1) * pickands_impl(w, m.parts[1]);
    }
    throw Error("unknown dependence family");
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::log_: return "log";
        case Family::nlog: return "nlog";
        case Family::mix: return "mix";
        case Family::alog: return "alog";
        case Family::anlog: return "anlog";
        case Family::amix: return "amix";
        case Family::combo: return "combo";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : {Family::log_, Family::nlog, Family::mix, Family::alog, Family::anlog,
                     Family::amix, Family::combo})
        if (name == family_name(f)) return f;
    return std::nullopt;
}

DependenceModel DependenceModel::logistic(double alpha) {
    DependenceModel m;
    m.family = Family::log_;
    m.alpha = alpha;
    return m;
}

DependenceModel DependenceModel::neg_logistic(double alpha) {
    DependenceModel m;
    m.family = Family::nlog;
    m.alpha = alpha;
    return m;
}

DependenceModel DependenceModel::mixed(double alpha) {
    DependenceModel m;
    m.family = Family::mix;
    m.alpha = alpha;
    return m;
}

DependenceModel DependenceModel::asy_logistic(double alpha, double theta1, double theta2) {
    DependenceModel m;
    m.family = Family::alog;
    m.alpha = alpha;
    m.theta1 = theta1;
    m.theta2 = theta2;
    return m;
}

DependenceModel DependenceModel::asy_neg_logistic(double alpha, double theta1, double theta2) {
    DependenceModel m;
    m.family = Family::anlog;
    m.alpha = alpha;
    m.theta1 = theta1;
    m.theta2 = theta2;
    return m;
}

DependenceModel DependenceModel::asy_mixed(double alpha, double theta) {
    DependenceModel m;
    m.family = Family::amix;
    m.alpha = alpha;
    m.theta1 = theta;
    m.theta2 = 0.0;
    return m;
}

DependenceModel DependenceModel::convex_combo(DependenceModel a, DependenceModel b,
                                              double weight1) {
    DependenceModel m;
    m.family = Family::combo;
    m.parts.push_back(std::move(a));
    m.parts.push_back(std::move(b));
    m.weight1 = weight1;
    return m;
}

DependenceModel DependenceModel::independence(Family f) {
    switch (f) {
        case Family::log_: return logistic(1.0);
        case Family::nlog: return neg_logistic(kAlphaFloor);
        case Family::mix: return mixed(0.0);
        case Family::alog: return asy_logistic(1.0, 0.5, 0.5);
        case Family::anlog: return asy_neg_logistic(kAlphaFloor, 0.5, 0.5);
        case Family::amix: return asy_mixed(0.0, 0.0);
        case Family::combo:
            return convex_combo(logistic(1.0), neg_logistic(kAlphaFloor), 0.5);
    }
    throw Error("unknown dependence family");
}

VDerivatives eval_v(double z1, double z2, const DependenceModel& m) {
    require_pair(z1, z2);
    const VEval e = eval_all(z1, z2, m);
    return {e.v, e.v1, e.v2, e.v12};
}

double DependenceModel::v(double z1, double z2) const {
    validate();
    require_pair(z1, z2);
    return eval_all(z1, z2, *this).v;
}

double DependenceModel::v1(double z1, double z2) const {
    validate();
    require_pair(z1, z2);
    return eval_all(z1, z2, *this).v1;
}

double DependenceModel::v2(double z1, double z2) const {
    validate();
    require_pair(z1, z2);
    return eval_all(z1, z2, *this).v2;
}

double DependenceModel::v12(double z1, double z2) const {
    validate();
    require_pair(z1, z2);
    return eval_all(z1, z2, *this).v12;
}

double DependenceModel::pickands(double w) const {
    validate();
    if (!(w >= 0.0) || !(w <= 1.0)) throw Error("pickands: w must lie in [0, 1]");
    return pickands_impl(w, *this);
}

double DependenceModel::chi() const {
    validate();
    return 2.0 - eval_all(1.0, 1.0, *this).v;
}

std::optional<std::string> DependenceModel::constraint_violation() const {
    switch (family) {
        case Family::log_:
            if (!(alpha >= kAlphaFloor)) return "log: 0 < alpha";
            if (!(alpha <= 1.0)) return "log: alpha <= 1";
            return std::nullopt;
        case Family::nlog:
            if (!(alpha > 0.0)) return "nlog: 0 < alpha";
            if (!(alpha <= kAlphaCap)) return "nlog: alpha <= 1e6";
            return std::nullopt;
        case Family::mix:
            if (!(alpha >= 0.0)) return "mix: 0 <= alpha";
            if (!(alpha <= 1.0)) return "mix: alpha <= 1";
            return std::nullopt;
        case Family::alog:
            if (!(alpha >= kAlphaFloor)) return "alog: 0 < alpha";
            if (!(alpha <= 1.0)) return "alog: alpha <= 1";
            if (!(theta1 >= 0.0)) return "alog: 0 <= theta1";
            if (!(theta1 <= 1.0)) return "alog: theta1 <= 1";
            if (!(theta2 >= 0.0)) return "alog: 0 <= theta2";
            if (!(theta2 <= 1.0)) return "alog: theta2 <= 1";
            return std::nullopt;
        case Family::anlog:
            if (!(alpha > 0.0)) return "anlog: 0 < alpha";
            if (!(alpha <= kAlphaCap)) return "anlog: alpha <= 1e6";
            if (!(theta1 > 0.0)) return "anlog: 0 < theta1";
            if (!(theta1 <= 1.0)) return "anlog: theta1 <= 1";
            if (!(theta2 > 0.0)) return "anlog: 0 < theta2";
            if (!(theta2 <= 1.0)) return "anlog: theta2 <= 1";
            return std::nullopt;
        case Family::amix: {
            const double t = theta1;
            if (!(alpha >= 0.0)) return "amix: 0 <= alpha";
            if (!(alpha + 2.0 * t <= 1.0)) return "amix: alpha + 2*theta <= 1";
            if (!(alpha + 3.0 * t >= 0.0)) return "amix: alpha + 3*theta >= 0";
            // Fourth condition of the classical asymmetric mixed model; without
            // it the cubic Pickands function can dip below max(w, 1-w).
            if (!(alpha + t <= 1.0)) return "amix: alpha + theta <= 1";
            return std::nullopt;
        }
        case Family::combo: {
            if (parts.size() != 2) return "combo: exactly two components";
            if (!(weight1 >= 0.0) || !(weight1 <= 1.0)) return "combo: 0 <= weight1 <= 1";
            for (const DependenceModel& p : parts)
                if (auto c = p.constraint_violation()) return c;
            return std::nullopt;
        }
    }
    return "unknown family";
}

void DependenceModel::validate() const {
    if (auto c = constraint_violation()) throw ConstraintViolation(*c);
}

std::size_t DependenceModel::n_params() const {
    switch (family) {
        case Family::log_:
        case Family::nlog:
        case Family::mix:
            return 1;
        case Family::amix:
            return 2;
        case Family::alog:
        case Family::anlog:
            return 3;
        case Family::combo:
            return parts[0].n_params() + parts[1].n_params();
    }
    return 0;
}

std::vector<double> to_unconstrained(const DependenceModel& m) {
    switch (m.family) {
        case Family::log_:
            return {logit(m.alpha)};
        case Family::nlog:
            return {std::log(std::clamp(m.alpha, kAlphaFloor, kAlphaCap))};
        case Family::mix:
            return {logit(m.alpha)};
        case Family::alog:
            return {logit(m.alpha), logit(m.theta1), logit(m.theta2)};
        case Family::anlog:
            return {std::log(std::clamp(m.alpha, kAlphaFloor, kAlphaCap)), logit(m.theta1),
                    logit(m.theta2)};
        case Family::amix: {
            double lo, hi;
            amix_theta_range(m.alpha, lo, hi);
            const double t = hi - lo > 1e-12 ? (m.theta1 - lo) / (hi - lo) : 0.5;
            return {logit(m.alpha / 1.5), logit(t)};
        }
        case Family::combo: {
            std::vector<double> x = to_unconstrained(m.parts[0]);
            const std::vector<double> x2 = to_unconstrained(m.parts[1]);
            x.insert(x.end(), x2.begin(), x2.end());
            return x;
        }
    }
    throw Error("unknown dependence family");
}

DependenceModel from_unconstrained(const DependenceModel& prototype, std::span<const double> x) {
    if (x.size() != prototype.n_params())
        throw Error("from_unconstrained: wrong parameter count");
    DependenceModel m = prototype;
    switch (prototype.family) {
        case Family::log_:
            m.alpha = std::max(expit(x[0]), kAlphaFloor);
            break;
        case Family::nlog:
            m.alpha = std::exp(std::clamp(x[0], std::log(kAlphaFloor), std::log(kAlphaCap)));
            break;
        case Family::mix:
            m.alpha = expit(x[0]);
            break;
        case Family::alog:
            m.alpha = std::max(expit(x[0]), kAlphaFloor);
            m.theta1 = expit(x[1]);
            m.theta2 = expit(x[2]);
            break;
        case Family::anlog:
            m.alpha = std::exp(std::clamp(x[0], std::log(kAlphaFloor), std::log(kAlphaCap)));
            m.theta1 = expit(x[1]);
            m.theta2 = expit(x[2]);
            break;
        case Family::amix: {
            m.alpha = 1.5 * expit(x[0]);
            double lo, hi;
            amix_theta_range(m.alpha, lo, hi);
            m.theta1 = lo + expit(x[1]) * (hi - lo);
            m.theta2 = 0.0;
            break;
        }
        case Family::combo: {
            const std::size_t n0 = prototype.parts[0].n_params();
            m.parts[0] = from_unconstrained(prototype.parts[0], x.subspan(0, n0));
            m.parts[1] = from_unconstrained(prototype.parts[1], x.subspan(n0));
            break;
        }
    }
    return m;
}

}  // namespace mcpot
