#include "rmdp/ambiguity.hpp"

#include "rmdp/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmdp {

AmbiguitySet AmbiguitySet::from_generators(std::vector<Density> gens) {
    AmbiguitySet set;
    set.kind = AmbiguityKind::Generators;
    set.generators = std::move(gens);
    return set;
}

AmbiguitySet AmbiguitySet::from_spectrum(Spectrum phi) {
    AmbiguitySet set;
    set.kind = AmbiguityKind::Spectral;
    set.spectrum = std::move(phi);
    return set;
}

std::vector<std::string> ambiguity_violations(const AmbiguitySet& set, const FiniteDisturbance& ref) {
    std::vector<std::string> out;
    if (set.is_spectral()) {
        for (auto& v : spectrum_violations(set.spectrum))
            out.push_back(std::move(v));
    } else {
        if (set.generators.empty())
            out.emplace_back("generator list is empty");
        for (std::size_t g = 0; g < set.generators.size(); ++g)
            for (auto& v : density_violations(set.generators[g], ref))
                out.push_back("generator " + std::to_string(g) + ": " + v);
    }
    if (set.q && !(*set.q > 1.0))
        out.emplace_back("norm exponent q must exceed 1");
    if (set.norm_bound && !(*set.norm_bound >= 1.0))
        out.emplace_back("norm bound must be at least 1");
    return out;
}

SupResult sup_over_set(const AmbiguitySet& set, std::span<const double> payoff, const FiniteDisturbance& ref) {
    return sup_over_set(set, payoff, ref, {});
}

SupResult sup_over_set(const AmbiguitySet& set, std::span<const double> payoff, const FiniteDisturbance& ref,
                       std::span<const std::size_t> allowed) {
    if (set.is_spectral()) {
        SupResult r;
        r.witness = comonotone_density(payoff, ref, set.spectrum);
        r.value = expectation(payoff, r.witness, ref);
        r.index = kComonotone;
        return r;
    }
    SupResult best;
    auto consider = [&](std::size_t g) {
        const double v = expectation(payoff, set.generators[g], ref);
        if (best.index == kUnset || v > best.value) {
            best.value = v;
            best.index = g;
        }
    };
    if (allowed.empty()) {
        for (std::size_t g = 0; g < set.generators.size(); ++g)
            consider(g);
    } else {
        std::vector<std::size_t> sorted(allowed.begin(), allowed.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t g : sorted)
            consider(g);
    }
    if (best.index == kUnset)
        throw std::invalid_argument("sup_over_set: no generator to maximize over");
    best.witness = set.generators[best.index];
    return best;
}

namespace {

std::vector<double> union_points(const DiscreteDistribution& d1, const DiscreteDistribution& d2) {
    std::vector<double> pts;
    for (const auto& a : d1.atoms())
        pts.push_back(a.value);
    for (const auto& a : d2.atoms())
        pts.push_back(a.value);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

void require_generators(const AmbiguitySet& set, const char* op) {
    if (set.is_spectral())
        throw std::invalid_argument(std::string(op) + ": spectral sets are reduced through spectrum_from_density");
    if (set.generators.empty())
        throw std::invalid_argument(std::string(op) + ": empty generator list");
}

} // namespace

bool usual_order_leq(const DiscreteDistribution& d1, const DiscreteDistribution& d2) {
    for (double t : union_points(d1, d2))
        if (d1.cdf(t) < d2.cdf(t) - kOrderTol)
            return false;
    return true;
}

bool convex_order_leq(const DiscreteDistribution& d1, const DiscreteDistribution& d2) {
    if (std::abs(d1.mean() - d2.mean()) > kConvexMeanTol)
        return false;
    for (double t : union_points(d1, d2))
        if (d1.stop_loss(t) > d2.stop_loss(t) + kConvexMeanTol)
            return false;
    return true;
}

std::optional<std::size_t> find_st_extreme(const AmbiguitySet& set, const FiniteDisturbance& ref, Direction dir) {
    require_generators(set, "find_st_extreme");
    std::vector<DiscreteDistribution> laws;
    for (const auto& y : set.generators)
        laws.push_back(law_under(ref, y));
    for (std::size_t g = 0; g < laws.size(); ++g) {
        bool extreme = true;
        for (std::size_t h = 0; h < laws.size() && extreme; ++h)
            extreme = dir == Direction::Max ? usual_order_leq(laws[h], laws[g]) : usual_order_leq(laws[g], laws[h]);
        if (extreme)
            return g;
    }
    return std::nullopt;
}

std::optional<std::size_t> find_cx_maximal(const AmbiguitySet& set, const FiniteDisturbance& ref) {
    require_generators(set, "find_cx_maximal");
    std::vector<DiscreteDistribution> laws;
    for (const auto& y : set.generators)
        laws.push_back(law_of_density(y, ref));
    for (std::size_t g = 0; g < laws.size(); ++g) {
        bool maximal = true;
        for (std::size_t h = 0; h < laws.size() && maximal; ++h)
            maximal = convex_order_leq(laws[h], laws[g]);
        if (maximal)
            return g;
    }
    return std::nullopt;
}

Density mix_densities(std::span<const Density> gens, std::span<const double> weights) {
    if (gens.empty() || gens.size() != weights.size())
        throw std::invalid_argument("mix_densities: generator and weight counts differ");
    Density y{std::vector<double>(gens.front().size(), 0.0)};
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t i = 0; i < y.size(); ++i)
            y.weights[i] += weights[g] * gens[g].weights[i];
    return y;
}

AmbiguitySet convex_combinations(const AmbiguitySet& set, std::size_t samples, std::uint64_t seed) {
    require_generators(set, "convex_combinations");
    AmbiguitySet out = set;
    Rng rng(seed);
    const std::size_t k = set.generators.size();
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<double> w(k);
        double total = 0.0;
        for (auto& x : w) {
            x = -std::log(1.0 - rng.uniform());
            total += x;
        }
        for (auto& x : w)
            x /= total;
        out.generators.push_back(mix_densities(set.generators, w));
    }
    return out;
}

} // namespace rmdp
