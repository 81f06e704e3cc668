#include "rmdp/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rmdp {

std::vector<std::string> disturbance_violations(const FiniteDisturbance& ref) {
    std::vector<std::string> out;
    if (ref.support.empty()) {
        out.emplace_back("disturbance support is empty");
        return out;
    }
    if (ref.support.size() != ref.probs.size()) {
        out.emplace_back("disturbance support and probabilities differ in length");
        return out;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        if (!std::isfinite(ref.support[i]))
            out.push_back("disturbance support value " + std::to_string(i) + " is not finite");
        if (!(ref.probs[i] > 0.0))
            out.push_back("reference probability " + std::to_string(i) + " is not positive");
        total += ref.probs[i];
    }
    if (std::abs(total - 1.0) > kProbTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "reference probabilities sum to " << total;
        out.push_back(msg.str());
    }
    std::vector<double> sorted = ref.support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        out.emplace_back("disturbance support values are not distinct");
    return out;
}

Density uniform_density(std::size_t m) { return Density{std::vector<double>(m, 1.0)}; }

std::vector<std::string> density_violations(const Density& y, const FiniteDisturbance& ref) {
    std::vector<std::string> out;
    if (y.size() != ref.size()) {
        out.push_back("density has " + std::to_string(y.size()) + " weights, support has " +
                      std::to_string(ref.size()));
        return out;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y.weights[i] >= 0.0) || !std::isfinite(y.weights[i]))
            out.push_back("density weight " + std::to_string(i) + " is negative or not finite");
        total += ref.probs[i] * y.weights[i];
    }
    if (std::abs(total - 1.0) > kProbTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "density integrates to " << total << " under the reference law";
        out.push_back(msg.str());
    }
    return out;
}

double expectation(std::span<const double> payoff, const Density& y, const FiniteDisturbance& ref) {
    if (payoff.size() != ref.size() || y.size() != ref.size())
        throw std::invalid_argument("expectation: payoff, density and support sizes differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < payoff.size(); ++i)
        acc += ref.probs[i] * y.weights[i] * payoff[i];
    return acc;
}

DiscreteDistribution DiscreteDistribution::from_atoms(std::span<const double> values,
                                                      std::span<const double> probs) {
    if (values.size() != probs.size())
        throw std::invalid_argument("from_atoms: values and probabilities differ in length");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    DiscreteDistribution d;
    double total = 0.0;
    for (std::size_t k : order) {
        const double p = probs[k];
        if (p < 0.0 || !std::isfinite(p) || !std::isfinite(values[k]))
            throw std::invalid_argument("from_atoms: negative or non-finite atom");
        total += p;
        if (p == 0.0)
            continue;
        if (!d.atoms_.empty() && d.atoms_.back().value == values[k])
            d.atoms_.back().prob += p;
        else
            d.atoms_.push_back({values[k], p});
    }
    if (d.atoms_.empty() || std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("from_atoms: total mass is not one");
    return d;
}

DiscreteDistribution DiscreteDistribution::point_mass(double value) {
    const double one = 1.0;
    return from_atoms(std::span(&value, 1), std::span(&one, 1));
}

DiscreteDistribution DiscreteDistribution::uniform(std::span<const double> values) {
    std::vector<double> probs(values.size(), 1.0 / static_cast<double>(values.size()));
    return from_atoms(values, probs);
}

double DiscreteDistribution::mean() const {
    double acc = 0.0;
    for (const auto& a : atoms_)
        acc += a.value * a.prob;
    return acc;
}

double DiscreteDistribution::cdf(double t) const {
    double acc = 0.0;
    for (const auto& a : atoms_) {
        if (a.value > t)
            break;
        acc += a.prob;
    }
    return std::min(acc, 1.0);
}

double DiscreteDistribution::stop_loss(double t) const {
    double acc = 0.0;
    for (const auto& a : atoms_)
        if (a.value > t)
            acc += (a.value - t) * a.prob;
    return acc;
}

std::vector<double> DiscreteDistribution::cumulative() const {
    std::vector<double> c(atoms_.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
        acc += atoms_[j].prob;
        c[j] = std::min(acc, 1.0);
    }
    if (!c.empty())
        c.back() = 1.0;
    return c;
}

DiscreteDistribution DiscreteDistribution::shifted(double c) const {
    std::vector<double> values, probs;
    for (const auto& a : atoms_) {
        values.push_back(a.value + c);
        probs.push_back(a.prob);
    }
    return from_atoms(values, probs);
}

DiscreteDistribution DiscreteDistribution::scaled(double lambda) const {
    if (lambda < 0.0)
        throw std::invalid_argument("scaled: negative factor");
    std::vector<double> values, probs;
    for (const auto& a : atoms_) {
        values.push_back(a.value * lambda);
        probs.push_back(a.prob);
    }
    return from_atoms(values, probs);
}

DiscreteDistribution law_under(const FiniteDisturbance& ref, const Density& y) {
    std::vector<double> probs(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
        probs[i] = ref.probs[i] * y.weights[i];
    return DiscreteDistribution::from_atoms(ref.support, probs);
}

DiscreteDistribution law_of_density(const Density& y, const FiniteDisturbance& ref) {
    return DiscreteDistribution::from_atoms(y.weights, ref.probs);
}

DiscreteDistribution law_of_payoff(std::span<const double> payoff, const FiniteDisturbance& ref) {
    return DiscreteDistribution::from_atoms(payoff, ref.probs);
}

} // namespace rmdp
