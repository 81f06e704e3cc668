#include "rmdp/model.hpp"

#include "rmdp/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rmdp {

bool FiniteRobustMDP::is_admissible(std::size_t n, std::size_t s, std::size_t a) const {
    if (n >= stages.size() || s >= stages[n].admissible.size())
        return false;
    const auto& d = stages[n].admissible[s];
    return std::binary_search(d.begin(), d.end(), a);
}

std::span<const std::size_t> FiniteRobustMDP::allowed_generators(std::size_t n, std::size_t s,
                                                                 std::size_t a) const {
    if (!generator_mask)
        return {};
    return (*generator_mask)[n][s][a];
}

namespace {

std::string where(std::size_t n) { return "stage " + std::to_string(n); }
std::string where(std::size_t n, std::size_t s) { return where(n) + ", state " + std::to_string(s); }
std::string where(std::size_t n, std::size_t s, std::size_t a) {
    return where(n, s) + ", action " + std::to_string(a);
}

bool strictly_increasing_finite(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]))
            return false;
        if (i > 0 && !(v[i - 1] < v[i]))
            return false;
    }
    return true;
}

void validate_stage(const FiniteRobustMDP& model, std::size_t n, std::vector<std::string>& out) {
    const Stage& st = model.stages[n];
    const std::size_t S = model.num_states();
    const std::size_t M = st.actions.size();

    if (st.actions.empty())
        out.push_back(where(n) + ": action grid is empty");
    else if (!strictly_increasing_finite(st.actions))
        out.push_back(where(n) + ": action grid is not strictly increasing and finite");

    bool admissible_ok = st.admissible.size() == S;
    if (!admissible_ok)
        out.push_back(where(n) + ": admissibility lists " + std::to_string(st.admissible.size()) +
                      " states, grid has " + std::to_string(S));
    else {
        for (std::size_t s = 0; s < S; ++s) {
            const auto& d = st.admissible[s];
            if (d.empty()) {
                out.push_back(where(n, s) + ": no admissible action");
                admissible_ok = false;
                continue;
            }
            if (!std::is_sorted(d.begin(), d.end()) || std::adjacent_find(d.begin(), d.end()) != d.end()) {
                out.push_back(where(n, s) + ": admissible indices not sorted and distinct");
                admissible_ok = false;
            }
            if (d.back() >= M) {
                out.push_back(where(n, s) + ": admissible index out of range");
                admissible_ok = false;
            }
        }
    }

    const auto dist_problems = disturbance_violations(st.disturbance);
    for (const auto& v : dist_problems)
        out.push_back(where(n) + ": " + v);
    if (dist_problems.empty()) {
        for (const auto& v : ambiguity_violations(st.ambiguity, st.disturbance))
            out.push_back(where(n) + ": " + v);
    } else if (!st.ambiguity.is_spectral() && st.ambiguity.generators.empty()) {
        out.push_back(where(n) + ": generator list is empty");
    }

    if (!st.dynamics.transition || !st.dynamics.cost) {
        out.push_back(where(n) + ": transition or cost function missing");
        return;
    }
    if (!admissible_ok || !dist_problems.empty() || M == 0)
        return;
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a : st.admissible[s]) {
            bool total = true;
            for (double z : st.disturbance.support) {
                const double xn = st.dynamics.transition(model.states[s], st.actions[a], z);
                if (!std::isfinite(xn)) {
                    total = false;
                    break;
                }
                const double xp = model.states[project_to_grid(model.states, xn)];
                if (!std::isfinite(st.dynamics.cost(model.states[s], st.actions[a], z, xp))) {
                    total = false;
                    break;
                }
            }
            if (!total)
                out.push_back(where(n, s, a) + ": transition or cost is not finite");
        }
}

void validate_mask(const FiniteRobustMDP& model, std::vector<std::string>& out) {
    const auto& mask = *model.generator_mask;
    if (mask.size() != model.horizon) {
        out.emplace_back("generator mask does not cover every stage");
        return;
    }
    for (std::size_t n = 0; n < model.horizon; ++n) {
        const Stage& st = model.stages[n];
        if (st.ambiguity.is_spectral()) {
            out.push_back(where(n) + ": generator mask given for a spectral ambiguity set");
            continue;
        }
        if (mask[n].size() != model.num_states()) {
            out.push_back(where(n) + ": generator mask does not cover every state");
            continue;
        }
        for (std::size_t s = 0; s < model.num_states(); ++s) {
            if (mask[n][s].size() != st.actions.size()) {
                out.push_back(where(n, s) + ": generator mask does not cover every action");
                continue;
            }
            if (s >= st.admissible.size())
                continue;
            for (std::size_t a : st.admissible[s]) {
                if (a >= mask[n][s].size())
                    continue;
                const auto& allowed = mask[n][s][a];
                if (allowed.empty())
                    out.push_back(where(n, s, a) + ": masked generator set is empty");
                for (std::size_t g : allowed)
                    if (g >= st.ambiguity.generators.size())
                        out.push_back(where(n, s, a) + ": masked generator index " + std::to_string(g) +
                                      " out of range");
            }
        }
    }
}

std::string join(const std::vector<std::string>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "; " : "") << v[i];
    return os.str();
}

} // namespace

std::vector<std::string> validate(const FiniteRobustMDP& model) {
    std::vector<std::string> out;
    if (model.horizon < 1)
        out.emplace_back("horizon must be at least 1");
    if (model.stages.size() != model.horizon)
        out.push_back("horizon is " + std::to_string(model.horizon) + " but " + std::to_string(model.stages.size()) +
                      " stages are given");
    if (model.states.empty())
        out.emplace_back("state grid is empty");
    else if (!strictly_increasing_finite(model.states))
        out.emplace_back("state grid is not strictly increasing and finite");
    if (model.terminal_cost.size() != model.num_states())
        out.emplace_back("terminal cost does not cover the state grid");
    for (std::size_t s = 0; s < model.terminal_cost.size(); ++s)
        if (!std::isfinite(model.terminal_cost[s]))
            out.push_back("terminal cost at state " + std::to_string(s) + " is not finite");
    if (!out.empty())
        return out;
    for (std::size_t n = 0; n < model.horizon; ++n)
        validate_stage(model, n, out);
    if (model.generator_mask)
        validate_mask(model, out);
    return out;
}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid model: " + join(violations)), violations_(std::move(violations)) {}

void require_valid(const FiniteRobustMDP& model) {
    auto v = validate(model);
    if (!v.empty())
        throw ValidationError(std::move(v));
}

std::size_t project_to_grid(std::span<const double> grid, double x) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), x);
    if (it == grid.begin())
        return 0;
    if (it == grid.end())
        return grid.size() - 1;
    const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    const std::size_t lo = hi - 1;
    return (x - grid[lo] <= grid[hi] - x) ? lo : hi;
}

DiscreteDistribution induced_distribution(const FiniteRobustMDP& model, std::size_t n, std::size_t s,
                                          std::size_t a, const Density& y) {
    if (!model.is_admissible(n, s, a))
        throw std::invalid_argument("induced_distribution: " + where(n, s, a) + " is not admissible");
    const Stage& st = model.stages[n];
    if (y.size() != st.disturbance.size())
        throw std::invalid_argument("induced_distribution: density does not match the disturbance support");
    std::vector<double> values, probs;
    for (std::size_t i = 0; i < st.disturbance.size(); ++i) {
        const double xn = st.dynamics.transition(model.states[s], st.actions[a], st.disturbance.support[i]);
        values.push_back(model.states[project_to_grid(model.states, xn)]);
        probs.push_back(st.disturbance.probs[i] * y.weights[i]);
    }
    return DiscreteDistribution::from_atoms(values, probs);
}

StageTable compile_stage(const FiniteRobustMDP& model, std::size_t n) {
    const Stage& st = model.stages[n];
    StageTable t;
    t.actions = st.actions.size();
    t.support = st.disturbance.size();
    const std::size_t total = model.num_states() * t.actions * t.support;
    t.next.assign(total, 0);
    t.cost.assign(total, 0.0);
    for (std::size_t s = 0; s < model.num_states(); ++s)
        for (std::size_t a : st.admissible[s]) {
            const std::size_t base = t.offset(s, a);
            for (std::size_t i = 0; i < t.support; ++i) {
                const double z = st.disturbance.support[i];
                const double xn = st.dynamics.transition(model.states[s], st.actions[a], z);
                const std::size_t k = project_to_grid(model.states, xn);
                t.next[base + i] = k;
                t.cost[base + i] = st.dynamics.cost(model.states[s], st.actions[a], z, model.states[k]);
            }
        }
    return t;
}

std::vector<double> stage_payoff(const StageTable& table, std::size_t s, std::size_t a,
                                 std::span<const double> v_next) {
    std::vector<double> f(table.support);
    const std::size_t base = table.offset(s, a);
    for (std::size_t i = 0; i < table.support; ++i)
        f[i] = table.cost[base + i] + v_next[table.next[base + i]];
    return f;
}

namespace {

constexpr double kFlagTol = 1e-9;

bool leq(double a, double b) { return a <= b + kFlagTol * (1.0 + std::abs(b)); }

void check_monotone(const FiniteRobustMDP& model, std::size_t n, std::size_t samples, Rng& rng,
                    std::vector<std::string>& out) {
    const Stage& st = model.stages[n];
    const auto& f = st.dynamics.monotone;
    const std::size_t S = model.num_states();
    if (f.admissible_decreasing)
        for (std::size_t s = 0; s + 1 < S; ++s)
            if (!std::includes(st.admissible[s].begin(), st.admissible[s].end(), st.admissible[s + 1].begin(),
                               st.admissible[s + 1].end())) {
                out.push_back(where(n, s + 1) + ": admissible set grows with the state");
                break;
            }
    if (f.transition_increasing)
        for (std::size_t s = 0; s + 1 < S; ++s)
            for (std::size_t a : st.admissible[s + 1]) {
                if (!model.is_admissible(n, s, a))
                    continue;
                for (double z : st.disturbance.support)
                    if (!leq(st.dynamics.transition(model.states[s], st.actions[a], z),
                             st.dynamics.transition(model.states[s + 1], st.actions[a], z))) {
                        out.push_back(where(n, s, a) + ": transition decreases in the state");
                        s = S;
                        break;
                    }
                if (s >= S)
                    break;
            }
    if (f.cost_increasing)
        for (std::size_t k = 0; k < samples; ++k) {
            std::size_t s1 = rng.index(S), s2 = rng.index(S), t1 = rng.index(S), t2 = rng.index(S);
            if (s1 > s2)
                std::swap(s1, s2);
            if (t1 > t2)
                std::swap(t1, t2);
            const auto& d = st.admissible[s2];
            const std::size_t a = d[rng.index(d.size())];
            if (!model.is_admissible(n, s1, a))
                continue;
            const double z = st.disturbance.support[rng.index(st.disturbance.size())];
            if (!leq(st.dynamics.cost(model.states[s1], st.actions[a], z, model.states[t1]),
                     st.dynamics.cost(model.states[s2], st.actions[a], z, model.states[t2]))) {
                out.push_back(where(n, s1, a) + ": cost decreases in (state, next state)");
                break;
            }
        }
}

void check_convex(const FiniteRobustMDP& model, std::size_t n, std::size_t samples, Rng& rng,
                  std::vector<std::string>& out) {
    const Stage& st = model.stages[n];
    const auto& f = st.dynamics.convex;
    const std::size_t S = model.num_states();
    if (f.admissible_convex)
        for (std::size_t s = 0; s < S; ++s) {
            const auto& d = st.admissible[s];
            if (d.back() - d.front() + 1 != d.size()) {
                out.push_back(where(n, s) + ": admissible actions are not a contiguous block");
                break;
            }
        }
    if (!f.transition_convex && !f.cost_convex)
        return;
    bool transition_ok = true, cost_ok = true;
    for (std::size_t k = 0; k < samples; ++k) {
        const std::size_t s1 = rng.index(S), s2 = rng.index(S);
        const double a1 = st.actions[st.admissible[s1][rng.index(st.admissible[s1].size())]];
        const double a2 = st.actions[st.admissible[s2][rng.index(st.admissible[s2].size())]];
        const double x1 = model.states[s1], x2 = model.states[s2];
        const double xm = 0.5 * (x1 + x2), am = 0.5 * (a1 + a2);
        const double z = st.disturbance.support[rng.index(st.disturbance.size())];
        if (f.transition_convex && transition_ok) {
            const double mid = st.dynamics.transition(xm, am, z);
            const double avg = 0.5 * (st.dynamics.transition(x1, a1, z) + st.dynamics.transition(x2, a2, z));
            if (!leq(mid, avg)) {
                out.push_back(where(n, s1) + ": transition is not convex in (state, action)");
                transition_ok = false;
            }
        }
        if (f.cost_convex && cost_ok) {
            const double y1 = model.states[rng.index(S)], y2 = model.states[rng.index(S)];
            const double mid = st.dynamics.cost(xm, am, z, 0.5 * (y1 + y2));
            const double avg = 0.5 * (st.dynamics.cost(x1, a1, z, y1) + st.dynamics.cost(x2, a2, z, y2));
            if (!leq(mid, avg)) {
                out.push_back(where(n, s1) + ": cost is not convex in (state, action, next state)");
                cost_ok = false;
            }
        }
    }
}

} // namespace

std::vector<std::string> flag_contradictions(const FiniteRobustMDP& model, std::size_t samples,
                                             std::uint64_t seed) {
    std::vector<std::string> out;
    Rng rng(seed);
    bool terminal_increasing = false, terminal_convex = false;
    for (std::size_t n = 0; n < model.horizon; ++n) {
        check_monotone(model, n, samples, rng, out);
        check_convex(model, n, samples, rng, out);
        terminal_increasing |= model.stages[n].dynamics.monotone.terminal_increasing;
        terminal_convex |= model.stages[n].dynamics.convex.terminal_convex;
    }
    const auto& x = model.states;
    const auto& c = model.terminal_cost;
    if (terminal_increasing)
        for (std::size_t s = 0; s + 1 < x.size(); ++s)
            if (!leq(c[s], c[s + 1])) {
                out.push_back("terminal cost decreases at state " + std::to_string(s + 1));
                break;
            }
    if (terminal_convex)
        for (std::size_t s = 1; s + 1 < x.size(); ++s) {
            const double left = (c[s] - c[s - 1]) / (x[s] - x[s - 1]);
            const double right = (c[s + 1] - c[s]) / (x[s + 1] - x[s]);
            if (!leq(left, right)) {
                out.push_back("terminal cost is not convex at state " + std::to_string(s));
                break;
            }
        }
    return out;
}

} // namespace rmdp
