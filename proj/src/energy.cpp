#include "rmdp/energy.hpp"

#include "rmdp/lq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rmdp {

namespace {

std::vector<double> average(const std::vector<std::vector<double>>& laws) {
    std::vector<double> ref(laws.front().size(), 0.0);
    for (const auto& l : laws)
        for (std::size_t i = 0; i < l.size(); ++i)
            ref[i] += l[i] / static_cast<double>(laws.size());
    return ref;
}

} // namespace

WindModel binomial_wind(double max_wind, std::size_t trials, const std::vector<double>& p) {
    if (trials == 0 || p.empty() || !(max_wind > 0.0))
        throw std::invalid_argument("binomial_wind: need trials >= 1, max_wind > 0 and at least one p");
    WindModel w;
    w.support = linspace(0.0, max_wind, trials + 1);
    for (double q : p) {
        if (!(q >= 0.0 && q <= 1.0))
            throw std::invalid_argument("binomial_wind: p outside [0, 1]");
        std::vector<double> law(trials + 1);
        const double n = static_cast<double>(trials);
        for (std::size_t k = 0; k <= trials; ++k) {
            const double kk = static_cast<double>(k);
            double lp = std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0);
            if (k > 0)
                lp += kk * std::log(q);
            if (k < trials)
                lp += (n - kk) * std::log1p(-q);
            law[k] = std::exp(lp);
        }
        double total = 0.0;
        for (double v : law)
            total += v;
        for (double& v : law)
            v /= total;
        w.laws.push_back(std::move(law));
    }
    w.reference = average(w.laws);
    return w;
}

WindModel beta_wind(double max_wind, std::size_t points, const std::vector<std::pair<double, double>>& shapes) {
    if (points == 0 || shapes.empty() || !(max_wind > 0.0))
        throw std::invalid_argument("beta_wind: need points >= 1, max_wind > 0 and at least one shape");
    WindModel w;
    for (std::size_t i = 0; i < points; ++i)
        w.support.push_back(max_wind * (static_cast<double>(i) + 0.5) / static_cast<double>(points));
    for (const auto& [a, b] : shapes) {
        if (!(a > 0.0 && b > 0.0))
            throw std::invalid_argument("beta_wind: shape parameters must be positive");
        std::vector<double> law(points);
        double total = 0.0;
        for (std::size_t i = 0; i < points; ++i) {
            const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(points);
            law[i] = std::exp((a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u));
            total += law[i];
        }
        for (double& v : law)
            v /= total;
        w.laws.push_back(std::move(law));
    }
    w.reference = average(w.laws);
    return w;
}

FiniteRobustMDP energy_build(const EnergyParams& p) {
    if (p.horizon == 0)
        throw std::invalid_argument("energy: horizon must be at least 1");
    if (!(p.capacity > 0.0) || !(p.max_wind > 0.0) || !(p.price >= 0.0) || !(p.penalty >= 0.0))
        throw std::invalid_argument("energy: need capacity, max_wind > 0 and price, penalty >= 0");
    if (p.state_points < 2 || p.action_points < 2)
        throw std::invalid_argument("energy: need at least two state and action points");
    const WindModel& w = p.wind;
    if (w.support.empty() || w.reference.size() != w.support.size() || w.laws.empty())
        throw std::invalid_argument("energy: wind model needs support, matching reference and at least one law");
    for (double z : w.support)
        if (!(z >= 0.0 && z <= p.max_wind))
            throw std::invalid_argument("energy: wind support must lie in [0, max_wind]");

    // Points with zero reference mass carry no information; drop them.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < w.support.size(); ++i)
        if (w.reference[i] > 0.0)
            keep.push_back(i);
    FiniteDisturbance dist;
    for (std::size_t i : keep) {
        dist.support.push_back(w.support[i]);
        dist.probs.push_back(w.reference[i]);
    }
    std::vector<Density> gens;
    for (std::size_t l = 0; l < w.laws.size(); ++l) {
        const auto& law = w.laws[l];
        if (law.size() != w.support.size())
            throw std::invalid_argument("energy: wind law " + std::to_string(l) + " does not match the support");
        for (std::size_t i = 0; i < law.size(); ++i)
            if (w.reference[i] <= 0.0 && law[i] > 0.0)
                throw std::invalid_argument("energy: wind law " + std::to_string(l) +
                                            " charges a point the reference does not");
        Density d;
        for (std::size_t i : keep)
            d.weights.push_back(law[i] / w.reference[i]);
        gens.push_back(std::move(d));
    }

    FiniteRobustMDP m;
    m.horizon = p.horizon;
    m.states = linspace(0.0, p.capacity, p.state_points);
    m.terminal_cost.assign(m.states.size(), 0.0);
    const double K = p.capacity, P = p.price, pen = p.penalty;
    Stage st;
    st.actions = linspace(0.0, p.max_wind, p.action_points);
    std::vector<std::size_t> all(st.actions.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    st.admissible.assign(m.states.size(), all);
    st.disturbance = std::move(dist);
    st.ambiguity = AmbiguitySet::from_generators(std::move(gens));
    st.dynamics.transition = [K](double x, double a, double z) {
        const double y = x + z - a;
        return z >= a ? std::min(y, K) : std::max(y, 0.0);
    };
    st.dynamics.cost = [P, pen](double x, double a, double z, double) {
        const double shortfall = z < a ? std::max(a - x - z, 0.0) : 0.0;
        return -a * P + (P + pen) * shortfall;
    };
    st.dynamics.monotone.admissible_decreasing = true;
    st.dynamics.monotone.transition_increasing = true;
    m.stages.assign(p.horizon, st);
    return m;
}

StReduction energy_st_reduction_check(const FiniteRobustMDP& model) {
    require_valid(model);
    StReduction out;
    std::vector<Density> chosen;
    for (std::size_t n = 0; n < model.horizon; ++n) {
        const Stage& st = model.stages[n];
        const auto idx = find_st_extreme(st.ambiguity, st.disturbance, Direction::Min);
        if (!idx)
            throw std::invalid_argument("stage " + std::to_string(n) + ": no usual-order-minimal generator");
        out.minimal.push_back(*idx);
        chosen.push_back(st.ambiguity.generators[*idx]);
    }
    const ValueTable robust = solve_robust(model).J;
    const ValueTable classical = classical_values(model, chosen);
    for (std::size_t n = 0; n < robust.size(); ++n)
        for (std::size_t s = 0; s < robust[n].size(); ++s)
            out.max_difference = std::max(out.max_difference, std::abs(robust[n][s] - classical[n][s]));
    return out;
}

} // namespace rmdp
