#pragma once

#include "rmdp/distribution.hpp"
#include "rmdp/risk.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rmdp {

/// Nature-policy entry meaning "the comonotone density of a spectral set".
inline constexpr std::size_t kComonotone = std::numeric_limits<std::size_t>::max() - 1;
/// Nature-policy entry for inadmissible (n, s, a) triples.
inline constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

inline constexpr double kOrderTol = 1e-12;
inline constexpr double kConvexMeanTol = 1e-10;

enum class AmbiguityKind { Generators, Spectral };

/**
 * Ambiguity set of one stage. Generators denote their convex hull; a spectral
 * set is { y : law(y) <=_cx phi(U) }. q and norm_bound are diagnostic metadata
 * only (q = +inf encodes the ess-sup norm).
 */
struct AmbiguitySet {
    AmbiguityKind kind = AmbiguityKind::Generators;
    std::vector<Density> generators;
    Spectrum spectrum;
    std::optional<double> q;
    std::optional<double> norm_bound;

    static AmbiguitySet from_generators(std::vector<Density> gens);
    static AmbiguitySet from_spectrum(Spectrum phi);
    static AmbiguitySet singleton(std::size_t m) { return from_generators({uniform_density(m)}); }

    bool is_spectral() const { return kind == AmbiguityKind::Spectral; }
};

std::vector<std::string> ambiguity_violations(const AmbiguitySet& set, const FiniteDisturbance& ref);

struct SupResult {
    double value = 0.0;
    Density witness;
    /// Generator index, or kComonotone for spectral sets.
    std::size_t index = kUnset;
};

/// Worst-case expectation of payoff over the set; lowest generator index on ties.
SupResult sup_over_set(const AmbiguitySet& set, std::span<const double> payoff, const FiniteDisturbance& ref);
/// Same, restricted to the listed generator indices (ignored for spectral sets).
SupResult sup_over_set(const AmbiguitySet& set, std::span<const double> payoff, const FiniteDisturbance& ref,
                       std::span<const std::size_t> allowed);

/// F_{d1}(t) >= F_{d2}(t) at every atom of either law.
bool usual_order_leq(const DiscreteDistribution& d1, const DiscreteDistribution& d2);
/// Equal means and stop-loss dominance at every atom of either law.
bool convex_order_leq(const DiscreteDistribution& d1, const DiscreteDistribution& d2);

enum class Direction { Max, Min };

/// Index of a generator whose disturbance law is <=_st-maximal (or minimal) in the set.
std::optional<std::size_t> find_st_extreme(const AmbiguitySet& set, const FiniteDisturbance& ref, Direction dir);
/// Index of a generator whose own law under ref dominates every other in <=_cx.
std::optional<std::size_t> find_cx_maximal(const AmbiguitySet& set, const FiniteDisturbance& ref);

/// Appends `samples` Dirichlet(1) mixtures of the generators; deterministic in seed.
AmbiguitySet convex_combinations(const AmbiguitySet& set, std::size_t samples, std::uint64_t seed);

/// Convex combination sum_g weights[g] * gens[g].
Density mix_densities(std::span<const Density> gens, std::span<const double> weights);

} // namespace rmdp
