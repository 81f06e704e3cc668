#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rmdp {

/// Absolute tolerance for probability normalisation checks.
inline constexpr double kProbTol = 1e-12;

/**
 * Finite reference law of a stage disturbance: atoms z_i with reference
 * probabilities p_i > 0.
 */
struct FiniteDisturbance {
    std::vector<double> support;
    std::vector<double> probs;

    std::size_t size() const { return support.size(); }
};

/// Human readable description of every broken invariant; empty when valid.
std::vector<std::string> disturbance_violations(const FiniteDisturbance& ref);

/**
 * Nonnegative reweighting y of the reference law, aligned with the
 * disturbance support. A valid density satisfies sum_i p_i y_i = 1.
 */
struct Density {
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    friend bool operator==(const Density&, const Density&) = default;
};

Density uniform_density(std::size_t m);

std::vector<std::string> density_violations(const Density& y, const FiniteDisturbance& ref);

/// sum_i p_i y_i f_i
double expectation(std::span<const double> payoff, const Density& y, const FiniteDisturbance& ref);

struct Atom {
    double value;
    double prob;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/**
 * Distribution on the reals with finitely many atoms, kept in canonical form:
 * sorted by value, equal values merged, every probability strictly positive.
 */
class DiscreteDistribution {
public:
    DiscreteDistribution() = default;

    /// Merges equal values, drops zero-mass atoms. Throws std::invalid_argument
    /// on negative mass or a total mass away from one.
    static DiscreteDistribution from_atoms(std::span<const double> values, std::span<const double> probs);
    static DiscreteDistribution point_mass(double value);
    /// Equal mass on each listed value.
    static DiscreteDistribution uniform(std::span<const double> values);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    double mean() const;
    /// F(t) = P(X <= t)
    double cdf(double t) const;
    /// E[(X - t)^+]
    double stop_loss(double t) const;
    /// Cumulative masses F(x_1), ..., F(x_k) with the last entry pinned to 1.
    std::vector<double> cumulative() const;

    /// Law of X + c.
    DiscreteDistribution shifted(double c) const;
    /// Law of lambda * X for lambda >= 0.
    DiscreteDistribution scaled(double lambda) const;

    friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

private:
    std::vector<Atom> atoms_;
};

/// Law of the disturbance Z under the measure with density y.
DiscreteDistribution law_under(const FiniteDisturbance& ref, const Density& y);
/// Law of the density itself as a random variable under the reference measure.
DiscreteDistribution law_of_density(const Density& y, const FiniteDisturbance& ref);
/// Law of payoff(Z) under the reference measure.
DiscreteDistribution law_of_payoff(std::span<const double> payoff, const FiniteDisturbance& ref);

} // namespace rmdp
