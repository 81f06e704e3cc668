#pragma once

#include "rmdp/solver.hpp"

#include <limits>
#include <string>
#include <vector>

namespace rmdp {

inline constexpr double kEnvelopeTol = 1e-9;

/**
 * Lower and upper bounding functions with growth rate alpha.
 * lower(x) <= -eps_lower, upper(x) >= eps_upper, eps_lower + eps_upper = 1.
 */
struct BoundingData {
    std::vector<double> lower;
    std::vector<double> upper;
    double eps_lower = 0.5;
    double eps_upper = 0.5;
    double alpha = 0.0;
    double norm_bound = 1.0;
    /// Norm exponent; +inf for the ess-sup norm.
    double q = std::numeric_limits<double>::infinity();
};

struct BoundingCheck {
    std::vector<std::string> violations;
    /// The local L^p domination condition holds trivially on finite supports.
    std::string local_domination = "auto-satisfied (finite support)";

    bool ok() const { return violations.empty(); }
};

BoundingCheck check_bounding(const FiniteRobustMDP& model, const BoundingData& data);

/// (1 - alpha^(N+1-n)) / (1 - alpha), or N+1-n at alpha = 1.
double envelope_factor(double alpha, std::size_t horizon, std::size_t n);

/// Every values[n][s] within the geometric envelope, tolerance kEnvelopeTol.
bool check_envelope(const FiniteRobustMDP& model, const BoundingData& data, const ValueTable& values);

/// q-norm (sum_i p_i y_i^q)^(1/q) of a density; max_i y_i for q = +inf.
double density_norm(const Density& y, const FiniteDisturbance& ref, double q);

} // namespace rmdp
