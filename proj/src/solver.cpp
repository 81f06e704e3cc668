#include "rmdp/solver.hpp"

#include "rmdp/matrix_game.hpp"
#include "rmdp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace rmdp {

namespace {

ValueTable terminal_table(const FiniteRobustMDP& model) {
    ValueTable J(model.horizon + 1, std::vector<double>(model.num_states(), 0.0));
    J[model.horizon] = model.terminal_cost;
    return J;
}

std::string at(std::size_t n, std::size_t s) {
    return "stage " + std::to_string(n) + ", state " + std::to_string(s);
}

void check_controller(const FiniteRobustMDP& model, const ControllerPolicy& controller) {
    if (controller.size() != model.horizon)
        throw PolicyError("controller policy does not cover every stage");
    for (std::size_t n = 0; n < model.horizon; ++n) {
        if (controller[n].size() != model.num_states())
            throw PolicyError("controller policy does not cover every state at stage " + std::to_string(n));
        for (std::size_t s = 0; s < model.num_states(); ++s)
            if (!model.is_admissible(n, s, controller[n][s]))
                throw PolicyError("controller action at " + at(n, s) + " is not admissible");
    }
}

// Density nature plays at (n, s, a) under a fixed policy entry.
Density nature_density(const FiniteRobustMDP& model, std::size_t n, std::size_t s, std::size_t a,
                       std::size_t entry, std::span<const double> payoff) {
    const Stage& st = model.stages[n];
    if (st.ambiguity.is_spectral()) {
        if (entry == kComonotone)
            return comonotone_density(payoff, st.disturbance, st.ambiguity.spectrum);
        const auto expansion = ordering_expansion(st.ambiguity.spectrum, st.disturbance);
        if (entry >= expansion.size())
            throw PolicyError("nature entry at " + at(n, s) + " is outside the ordering expansion");
        return expansion[entry];
    }
    if (entry >= st.ambiguity.generators.size())
        throw PolicyError("nature entry at " + at(n, s) + " is not a generator index");
    const auto allowed = model.allowed_generators(n, s, a);
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), entry) == allowed.end())
        throw PolicyError("nature entry at " + at(n, s) + " is masked out");
    return st.ambiguity.generators[entry];
}

std::vector<std::size_t> nature_first_family(const FiniteRobustMDP& model, std::size_t n, std::size_t s) {
    const Stage& st = model.stages[n];
    std::vector<std::size_t> family;
    if (st.ambiguity.is_spectral()) {
        const auto k = ordering_expansion(st.ambiguity.spectrum, st.disturbance).size();
        for (std::size_t g = 0; g < k; ++g)
            family.push_back(g);
        return family;
    }
    for (std::size_t g = 0; g < st.ambiguity.generators.size(); ++g)
        family.push_back(g);
    if (!model.generator_mask)
        return family;
    for (std::size_t a : st.admissible[s]) {
        std::vector<std::size_t> allowed(model.allowed_generators(n, s, a).begin(),
                                         model.allowed_generators(n, s, a).end());
        std::sort(allowed.begin(), allowed.end());
        std::vector<std::size_t> kept;
        std::set_intersection(family.begin(), family.end(), allowed.begin(), allowed.end(), std::back_inserter(kept));
        family = std::move(kept);
    }
    if (family.empty())
        throw std::invalid_argument("nature-first order undefined at " + at(n, s) +
                                    ": no generator is allowed for every admissible action");
    return family;
}

} // namespace

double operator_L(const FiniteRobustMDP& model, std::size_t n, std::size_t s, std::size_t a, const Density& y,
                  std::span<const double> v_next) {
    if (!model.is_admissible(n, s, a))
        throw std::invalid_argument("operator_L: " + at(n, s) + ", action " + std::to_string(a) +
                                    " is not admissible");
    const Stage& st = model.stages[n];
    if (y.size() != st.disturbance.size() || v_next.size() != model.num_states())
        throw std::invalid_argument("operator_L: density or continuation has the wrong length");
    double acc = 0.0;
    for (std::size_t i = 0; i < st.disturbance.size(); ++i) {
        const double z = st.disturbance.support[i];
        const std::size_t k =
            project_to_grid(model.states, st.dynamics.transition(model.states[s], st.actions[a], z));
        acc += st.disturbance.probs[i] * y.weights[i] *
               (st.dynamics.cost(model.states[s], st.actions[a], z, model.states[k]) + v_next[k]);
    }
    return acc;
}

std::vector<Density> nature_candidates(const FiniteRobustMDP& model, std::size_t n, std::size_t s, std::size_t a) {
    const Stage& st = model.stages[n];
    if (st.ambiguity.is_spectral())
        return ordering_expansion(st.ambiguity.spectrum, st.disturbance);
    const auto allowed = model.allowed_generators(n, s, a);
    if (allowed.empty())
        return st.ambiguity.generators;
    std::vector<std::size_t> sorted(allowed.begin(), allowed.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Density> out;
    for (std::size_t g : sorted)
        out.push_back(st.ambiguity.generators[g]);
    return out;
}

SolveResult solve_robust(const FiniteRobustMDP& model) {
    require_valid(model);
    const std::size_t N = model.horizon, S = model.num_states();
    SolveResult r;
    r.J = terminal_table(model);
    r.controller.assign(N, std::vector<std::size_t>(S, 0));
    r.nature.resize(N);
    r.witness.assign(N, std::vector<Density>(S));
    for (std::size_t step = 0; step < N; ++step) {
        const std::size_t n = N - 1 - step;
        const Stage& st = model.stages[n];
        const StageTable table = compile_stage(model, n);
        r.nature[n].assign(S, std::vector<std::size_t>(st.actions.size(), kUnset));
        parallel_for(S, [&](std::size_t s) {
            bool first = true;
            double best = 0.0;
            for (std::size_t a : st.admissible[s]) {
                const auto payoff = stage_payoff(table, s, a, r.J[n + 1]);
                auto sup = sup_over_set(st.ambiguity, payoff, st.disturbance, model.allowed_generators(n, s, a));
                r.nature[n][s][a] = sup.index;
                if (first || sup.value < best - kTieTol) {
                    first = false;
                    best = sup.value;
                    r.controller[n][s] = a;
                    r.witness[n][s] = std::move(sup.witness);
                }
            }
            r.J[n][s] = best;
        });
    }
    return r;
}

NatureFirstResult solve_nature_first(const FiniteRobustMDP& model) {
    require_valid(model);
    const std::size_t N = model.horizon, S = model.num_states();
    NatureFirstResult r;
    r.J = terminal_table(model);
    r.family.assign(N, std::vector<std::vector<std::size_t>>(S));
    r.weights.assign(N, std::vector<std::vector<double>>(S));
    r.nature_density.assign(N, std::vector<Density>(S));
    r.response.assign(N, std::vector<std::size_t>(S, 0));
    r.responses.assign(N, std::vector<std::vector<std::size_t>>(S));
    for (std::size_t step = 0; step < N; ++step) {
        const std::size_t n = N - 1 - step;
        const Stage& st = model.stages[n];
        const StageTable table = compile_stage(model, n);
        const std::vector<Density> expansion =
            st.ambiguity.is_spectral() ? ordering_expansion(st.ambiguity.spectrum, st.disturbance)
                                       : std::vector<Density>{};
        const std::vector<Density>& pool = st.ambiguity.is_spectral() ? expansion : st.ambiguity.generators;
        for (std::size_t s = 0; s < S; ++s)
            r.family[n][s] = nature_first_family(model, n, s);
        parallel_for(S, [&](std::size_t s) {
            const auto& family = r.family[n][s];
            const auto& acts = st.admissible[s];
            std::vector<std::vector<double>> m(acts.size(), std::vector<double>(family.size()));
            for (std::size_t i = 0; i < acts.size(); ++i) {
                const auto payoff = stage_payoff(table, s, acts[i], r.J[n + 1]);
                for (std::size_t k = 0; k < family.size(); ++k)
                    m[i][k] = expectation(payoff, pool[family[k]], st.disturbance);
            }
            const ColumnMixture mix = max_min_over_column_mixtures(m);
            r.J[n][s] = mix.value;
            r.weights[n][s] = mix.weights;
            r.response[n][s] = acts[mix.response];
            std::vector<Density> members;
            for (std::size_t g : family)
                members.push_back(pool[g]);
            r.nature_density[n][s] = mix_densities(members, mix.weights);
            auto& responses = r.responses[n][s];
            responses.assign(family.size(), acts.front());
            for (std::size_t k = 0; k < family.size(); ++k) {
                double best = m[0][k];
                for (std::size_t i = 1; i < acts.size(); ++i)
                    if (m[i][k] < best - kTieTol) {
                        best = m[i][k];
                        responses[k] = acts[i];
                    }
            }
        });
    }
    return r;
}

ValueTable evaluate_pair(const FiniteRobustMDP& model, const ControllerPolicy& controller,
                         const NaturePolicy& nature) {
    require_valid(model);
    check_controller(model, controller);
    const std::size_t N = model.horizon, S = model.num_states();
    if (nature.size() != N)
        throw PolicyError("nature policy does not cover every stage");
    ValueTable J = terminal_table(model);
    for (std::size_t step = 0; step < N; ++step) {
        const std::size_t n = N - 1 - step;
        const Stage& st = model.stages[n];
        if (nature[n].size() != S)
            throw PolicyError("nature policy does not cover every state at stage " + std::to_string(n));
        const StageTable table = compile_stage(model, n);
        for (std::size_t s = 0; s < S; ++s) {
            const std::size_t a = controller[n][s];
            if (nature[n][s].size() != st.actions.size())
                throw PolicyError("nature policy does not cover every action at " + at(n, s));
            const auto payoff = stage_payoff(table, s, a, J[n + 1]);
            const Density y = nature_density(model, n, s, a, nature[n][s][a], payoff);
            J[n][s] = expectation(payoff, y, st.disturbance);
        }
    }
    return J;
}

ValueTable evaluate_robust_policy(const FiniteRobustMDP& model, const ControllerPolicy& controller) {
    require_valid(model);
    check_controller(model, controller);
    const std::size_t N = model.horizon, S = model.num_states();
    ValueTable J = terminal_table(model);
    for (std::size_t step = 0; step < N; ++step) {
        const std::size_t n = N - 1 - step;
        const Stage& st = model.stages[n];
        const StageTable table = compile_stage(model, n);
        for (std::size_t s = 0; s < S; ++s) {
            const std::size_t a = controller[n][s];
            const auto payoff = stage_payoff(table, s, a, J[n + 1]);
            J[n][s] = sup_over_set(st.ambiguity, payoff, st.disturbance, model.allowed_generators(n, s, a)).value;
        }
    }
    return J;
}

ValueTable classical_values(const FiniteRobustMDP& model, const std::vector<Density>& per_stage) {
    require_valid(model);
    if (per_stage.size() != model.horizon)
        throw std::invalid_argument("classical_values: one density per stage is required");
    const std::size_t N = model.horizon, S = model.num_states();
    ValueTable J = terminal_table(model);
    for (std::size_t step = 0; step < N; ++step) {
        const std::size_t n = N - 1 - step;
        const Stage& st = model.stages[n];
        if (!density_violations(per_stage[n], st.disturbance).empty())
            throw std::invalid_argument("classical_values: invalid density at stage " + std::to_string(n));
        const StageTable table = compile_stage(model, n);
        for (std::size_t s = 0; s < S; ++s) {
            bool first = true;
            for (std::size_t a : st.admissible[s]) {
                const double v = expectation(stage_payoff(table, s, a, J[n + 1]), per_stage[n], st.disturbance);
                if (first || v < J[n][s] - kTieTol) {
                    J[n][s] = v;
                    first = false;
                }
            }
        }
    }
    return J;
}

bool check_value_monotone(const ValueTable& J, Monotonicity direction) {
    for (const auto& row : J)
        for (std::size_t s = 0; s + 1 < row.size(); ++s) {
            const double lo = direction == Monotonicity::Increasing ? row[s] : row[s + 1];
            const double hi = direction == Monotonicity::Increasing ? row[s + 1] : row[s];
            if (lo > hi + kTieTol * (1.0 + std::abs(hi)))
                return false;
        }
    return true;
}

} // namespace rmdp
