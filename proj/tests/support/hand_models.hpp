#pragma once

// Small hand-built models whose values are easy to work out by hand.

#include "rmdp/model.hpp"

#include <vector>

namespace rmdp::testing {

/// States {0, 1}, actions {0, 1} everywhere, Z in {0, 1} with equal reference mass,
/// T(x, a, z) = z and cost c(x, a, z) = a + x z. Singleton ambiguity unless gens given.
inline FiniteRobustMDP two_state_model(std::size_t horizon, std::vector<Density> gens = {}) {
    FiniteRobustMDP m;
    m.horizon = horizon;
    m.states = {0.0, 1.0};
    m.terminal_cost = {0.0, 1.0};
    if (gens.empty())
        gens.push_back(uniform_density(2));
    for (std::size_t n = 0; n < horizon; ++n) {
        Stage st;
        st.actions = {0.0, 1.0};
        st.admissible = {{0, 1}, {0, 1}};
        st.disturbance = {{0.0, 1.0}, {0.5, 0.5}};
        st.ambiguity = AmbiguitySet::from_generators(gens);
        st.dynamics.transition = [](double, double, double z) { return z; };
        st.dynamics.cost = [](double x, double a, double z, double) { return a + x * z; };
        m.stages.push_back(std::move(st));
    }
    return m;
}

/// Same layout with zero costs and zero terminal cost.
inline FiniteRobustMDP zero_cost_model(std::size_t horizon, std::vector<Density> gens = {}) {
    FiniteRobustMDP m = two_state_model(horizon, std::move(gens));
    m.terminal_cost = {0.0, 0.0};
    for (auto& st : m.stages)
        st.dynamics.cost = [](double, double, double, double) { return 0.0; };
    return m;
}

} // namespace rmdp::testing
