#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcpot/errors.hpp"

namespace mcpot {

/// Parametric bivariate extremal dependence families. The joint law of a
/// consecutive pair on unit-Frechet scale is exp(-V(z1, z2)) with V
/// homogeneous of order -1.
enum class Family { log_, nlog, mix, alog, anlog, amix, combo };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct DependenceModel {
    Family family = Family::log_;
    double alpha = 1.0;
    double theta1 = 1.0;  // asymmetry weight (alog/anlog); the theta parameter for amix
    double theta2 = 1.0;  // asymmetry weight on the second coordinate (alog/anlog)

    // combo: V = weight1 * parts[0].V + (1 - weight1) * parts[1].V
    std::vector<DependenceModel> parts;
    double weight1 = 1.0;

    static DependenceModel logistic(double alpha);
    static DependenceModel neg_logistic(double alpha);
    static DependenceModel mixed(double alpha);
    static DependenceModel asy_logistic(double alpha, double theta1, double theta2);
    static DependenceModel asy_neg_logistic(double alpha, double theta1, double theta2);
    static DependenceModel asy_mixed(double alpha, double theta);
    static DependenceModel convex_combo(DependenceModel a, DependenceModel b, double weight1);
    /// Parameters at which the family factorizes into independence.
    static DependenceModel independence(Family f);

    /// Exponent measure V(z1, z2) and its partial derivatives.
    double v(double z1, double z2) const;
    double v1(double z1, double z2) const;
    double v2(double z1, double z2) const;
    double v12(double z1, double z2) const;

    /// Pickands dependence function A(w) with w = z1 / (z1 + z2).
    double pickands(double w) const;

    /// Model-implied asymptotic dependence coefficient, 2 - V(1,1).
    double chi() const;

    /// First violated constraint, or nullopt when the parameters are valid.
    std::optional<std::string> constraint_violation() const;
    void validate() const;  // throws ConstraintViolation

    /// Number of free parameters under the unconstrained reparameterization.
    std::size_t n_params() const;
};

/// Bijection between the valid parameter set and R^n (logit/log transforms;
/// amix maps its constraint polygon through nested interval scalings).
/// Boundary parameter values are clamped just inside the open domain.
std::vector<double> to_unconstrained(const DependenceModel& m);
DependenceModel from_unconstrained(const DependenceModel& prototype, std::span<const double> x);

struct VDerivatives {
    double v, v1, v2, v12;
};

/// V and all partials in a single pass. Parameters are assumed valid: call
/// validate() once before hot loops.
VDerivatives eval_v(double z1, double z2, const DependenceModel& m);

}  // namespace mcpot
