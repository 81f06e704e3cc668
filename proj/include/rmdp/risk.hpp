#pragma once

#include "rmdp/distribution.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rmdp {

/**
 * Right-continuous increasing step function on [0,1] with unit integral.
 *
 * phi(u) = values[j] for u in [breakpoints[j], breakpoints[j+1]); the last
 * step also covers u = 1. breakpoints has one more entry than values, starts
 * at 0 and ends at 1.
 */
struct Spectrum {
    std::vector<double> breakpoints;
    std::vector<double> values;

    /// phi == 1, the risk-neutral spectrum.
    static Spectrum constant();
    /// (1 / (1 - alpha)) 1_[alpha, 1], alpha in [0, 1).
    static Spectrum expected_shortfall(double alpha);

    double at(double u) const;
    /// Integral of phi over [0, u].
    double cumulative(double u) const;
    /// Integral of phi over [a, b].
    double integral(double a, double b) const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

std::vector<std::string> spectrum_violations(const Spectrum& phi);

/// inf { x : F(x) >= alpha }, alpha in (0,1).
double quantile_lower(const DiscreteDistribution& d, double alpha);
/// inf { x : F(x) > alpha }, alpha in (0,1).
double quantile_upper(const DiscreteDistribution& d, double alpha);

/// Integral of q_X(u) phi(u) over (0,1), summed exactly cell by cell.
double spectral_rho(const DiscreteDistribution& d, const Spectrum& phi);

/**
 * Density comonotone with the payoff: support points are ranked by payoff
 * (ties keep support order) and the j-th ranked point, occupying the
 * cumulative reference band [c_{j-1}, c_j], receives the average of phi over
 * that band.
 */
Density comonotone_density(std::span<const double> payoff, const FiniteDisturbance& ref, const Spectrum& phi);

/// E[payoff * comonotone density]; coincides with spectral_rho of the payoff law.
double dual_value(std::span<const double> payoff, const FiniteDisturbance& ref, const Spectrum& phi);

struct TransformedSample {
    std::size_t atom;
    double u;
};

/// u = F(x_i-) + v (F(x_i) - F(x_i-)), so both quantiles evaluated at u return x_i.
TransformedSample distributional_transform(const DiscreteDistribution& d, std::size_t atom, double v);

/// Upper quantile function of the law of y under the reference measure.
Spectrum spectrum_from_density(const Density& y, const FiniteDisturbance& ref);

/**
 * Comonotone densities for every ranking of the support points, duplicates
 * removed. Each is a conditional expectation of phi(U), so the maximum over
 * the family of E[X Y] equals spectral_rho for every payoff X.
 * Refuses supports larger than max_support.
 */
std::vector<Density> ordering_expansion(const Spectrum& phi, const FiniteDisturbance& ref,
                                        std::size_t max_support = 6);

} // namespace rmdp
