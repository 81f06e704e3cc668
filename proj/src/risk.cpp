#include "rmdp/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rmdp {

Spectrum Spectrum::constant() { return Spectrum{{0.0, 1.0}, {1.0}}; }

Spectrum Spectrum::expected_shortfall(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("expected_shortfall: alpha must lie in [0, 1)");
    if (alpha == 0.0)
        return constant();
    return Spectrum{{0.0, alpha, 1.0}, {0.0, 1.0 / (1.0 - alpha)}};
}

double Spectrum::at(double u) const {
    for (std::size_t j = 0; j + 1 < values.size(); ++j)
        if (u < breakpoints[j + 1])
            return values[j];
    return values.back();
}

double Spectrum::cumulative(double u) const {
    if (u <= 0.0)
        return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double lo = breakpoints[j];
        if (lo >= u)
            break;
        const double hi = std::min(u, breakpoints[j + 1]);
        acc += values[j] * (hi - lo);
    }
    return acc;
}

double Spectrum::integral(double a, double b) const { return cumulative(b) - cumulative(a); }

std::vector<std::string> spectrum_violations(const Spectrum& phi) {
    std::vector<std::string> out;
    if (phi.values.empty() || phi.breakpoints.size() != phi.values.size() + 1) {
        out.emplace_back("spectrum needs k >= 1 values and k + 1 breakpoints");
        return out;
    }
    if (phi.breakpoints.front() != 0.0 || phi.breakpoints.back() != 1.0)
        out.emplace_back("spectrum breakpoints must start at 0 and end at 1");
    for (std::size_t j = 0; j + 1 < phi.breakpoints.size(); ++j)
        if (!(phi.breakpoints[j] < phi.breakpoints[j + 1]))
            out.push_back("spectrum breakpoints not strictly increasing at " + std::to_string(j));
    for (std::size_t j = 0; j < phi.values.size(); ++j) {
        if (!(phi.values[j] >= 0.0) || !std::isfinite(phi.values[j]))
            out.push_back("spectrum value " + std::to_string(j) + " is negative or not finite");
        if (j > 0 && phi.values[j] < phi.values[j - 1])
            out.push_back("spectrum decreases at step " + std::to_string(j));
    }
    if (out.empty()) {
        const double total = phi.cumulative(1.0);
        if (std::abs(total - 1.0) > kProbTol) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "spectrum integrates to " << total;
            out.push_back(msg.str());
        }
    }
    return out;
}

namespace {

void check_level(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("quantile level must lie in (0, 1)");
}

// Density for a fixed ranking of support points (rank[0] has the lowest payoff).
Density ranked_density(std::span<const std::size_t> rank, const FiniteDisturbance& ref, const Spectrum& phi) {
    Density y{std::vector<double>(ref.size(), 0.0)};
    double lo = 0.0;
    double lo_mass = 0.0;
    for (std::size_t j = 0; j < rank.size(); ++j) {
        const std::size_t i = rank[j];
        const double hi = (j + 1 == rank.size()) ? 1.0 : std::min(lo + ref.probs[i], 1.0);
        const double hi_mass = phi.cumulative(hi);
        y.weights[i] = (hi_mass - lo_mass) / ref.probs[i];
        lo = hi;
        lo_mass = hi_mass;
    }
    return y;
}

} // namespace

double quantile_lower(const DiscreteDistribution& d, double alpha) {
    check_level(alpha);
    const auto c = d.cumulative();
    for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] >= alpha)
            return d.atoms()[j].value;
    return d.atoms().back().value;
}

double quantile_upper(const DiscreteDistribution& d, double alpha) {
    check_level(alpha);
    const auto c = d.cumulative();
    for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] > alpha)
            return d.atoms()[j].value;
    return d.atoms().back().value;
}

double spectral_rho(const DiscreteDistribution& d, const Spectrum& phi) {
    // q_X is constant on each open CDF cell; phi contributes its exact integral there.
    const auto c = d.cumulative();
    double rho = 0.0;
    double lo_mass = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double hi_mass = phi.cumulative(c[j]);
        rho += d.atoms()[j].value * (hi_mass - lo_mass);
        lo_mass = hi_mass;
    }
    return rho;
}

Density comonotone_density(std::span<const double> payoff, const FiniteDisturbance& ref, const Spectrum& phi) {
    if (payoff.size() != ref.size())
        throw std::invalid_argument("comonotone_density: payoff and support sizes differ");
    std::vector<std::size_t> rank(payoff.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::size_t a, std::size_t b) { return payoff[a] < payoff[b]; });
    return ranked_density(rank, ref, phi);
}

double dual_value(std::span<const double> payoff, const FiniteDisturbance& ref, const Spectrum& phi) {
    return expectation(payoff, comonotone_density(payoff, ref, phi), ref);
}

TransformedSample distributional_transform(const DiscreteDistribution& d, std::size_t atom, double v) {
    if (atom >= d.size())
        throw std::out_of_range("distributional_transform: atom index out of range");
    if (!(v >= 0.0 && v <= 1.0))
        throw std::domain_error("distributional_transform: v must lie in [0, 1]");
    const auto c = d.cumulative();
    const double below = atom == 0 ? 0.0 : c[atom - 1];
    return {atom, below + v * (c[atom] - below)};
}

Spectrum spectrum_from_density(const Density& y, const FiniteDisturbance& ref) {
    const auto law = law_of_density(y, ref);
    const auto c = law.cumulative();
    Spectrum phi;
    phi.breakpoints.push_back(0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double value = law.atoms()[j].value;
        const double hi = c[j];
        if (hi <= phi.breakpoints.back()) {
            // rounding collapsed the cell; fold it into the previous step
            if (!phi.values.empty())
                phi.values.back() = value;
            continue;
        }
        if (!phi.values.empty() && phi.values.back() == value) {
            phi.breakpoints.back() = hi;
            continue;
        }
        phi.values.push_back(value);
        phi.breakpoints.push_back(hi);
    }
    phi.breakpoints.back() = 1.0;
    return phi;
}

std::vector<Density> ordering_expansion(const Spectrum& phi, const FiniteDisturbance& ref,
                                        std::size_t max_support) {
    if (ref.size() > max_support)
        throw std::invalid_argument("ordering_expansion: support of size " + std::to_string(ref.size()) +
                                    " exceeds the limit of " + std::to_string(max_support));
    std::vector<std::size_t> rank(ref.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::vector<Density> out;
    do {
        Density y = ranked_density(rank, ref, phi);
        if (std::find(out.begin(), out.end(), y) == out.end())
            out.push_back(std::move(y));
    } while (std::next_permutation(rank.begin(), rank.end()));
    return out;
}

} // namespace rmdp
