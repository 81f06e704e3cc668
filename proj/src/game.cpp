#include "rmdp/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmdp {

StaticGame StaticGame::tabulate(std::vector<double> actions, std::vector<double> params,
                                const std::function<double(double, double)>& f) {
    if (actions.empty() || params.empty())
        throw std::invalid_argument("StaticGame: empty grid");
    StaticGame g{std::move(actions), std::move(params), {}};
    g.payoff.assign(g.actions.size(), std::vector<double>(g.params.size()));
    for (std::size_t i = 0; i < g.actions.size(); ++i)
        for (std::size_t j = 0; j < g.params.size(); ++j)
            g.payoff[i][j] = f(g.actions[i], g.params[j]);
    return g;
}

GameValue upper_value(const StaticGame& g) {
    GameValue best{0.0, 0};
    for (std::size_t i = 0; i < g.payoff.size(); ++i) {
        const double worst = *std::max_element(g.payoff[i].begin(), g.payoff[i].end());
        if (i == 0 || worst < best.value)
            best = {worst, i};
    }
    return best;
}

GameValue lower_value(const StaticGame& g) {
    GameValue best{0.0, 0};
    for (std::size_t j = 0; j < g.params.size(); ++j) {
        double least = g.payoff[0][j];
        for (std::size_t i = 1; i < g.payoff.size(); ++i)
            least = std::min(least, g.payoff[i][j]);
        if (j == 0 || least > best.value)
            best = {least, j};
    }
    return best;
}

double mixing_value(const StaticGame& g, std::span<const double> mix) {
    if (mix.size() != g.actions.size())
        throw std::invalid_argument("mixing_value: mix does not match the action grid");
    double total = 0.0;
    for (double w : mix) {
        if (w < 0.0)
            throw std::invalid_argument("mixing_value: negative mixing weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("mixing_value: mixing weights do not sum to 1");
    double best = 0.0;
    for (std::size_t j = 0; j < g.params.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < mix.size(); ++i)
            acc += mix[i] * g.payoff[i][j];
        if (j == 0 || acc > best)
            best = acc;
    }
    return best;
}

std::optional<SaddlePoint> saddle_search(const StaticGame& g, double tol) {
    const std::size_t A = g.actions.size(), P = g.params.size();
    std::vector<double> row_max(A), col_min(P);
    for (std::size_t i = 0; i < A; ++i)
        row_max[i] = *std::max_element(g.payoff[i].begin(), g.payoff[i].end());
    for (std::size_t j = 0; j < P; ++j) {
        col_min[j] = g.payoff[0][j];
        for (std::size_t i = 1; i < A; ++i)
            col_min[j] = std::min(col_min[j], g.payoff[i][j]);
    }
    for (std::size_t i = 0; i < A; ++i)
        for (std::size_t j = 0; j < P; ++j) {
            const double v = g.payoff[i][j];
            if (v >= row_max[i] - tol && v <= col_min[j] + tol)
                return SaddlePoint{i, j};
        }
    return std::nullopt;
}

ValueTable gap(const FiniteRobustMDP& model) {
    const SolveResult upper = solve_robust(model);
    const NatureFirstResult lower = solve_nature_first(model);
    ValueTable out = upper.J;
    for (std::size_t n = 0; n < out.size(); ++n)
        for (std::size_t s = 0; s < out[n].size(); ++s)
            out[n][s] -= lower.J[n][s];
    return out;
}

std::vector<double> unit_grid(double step) {
    if (!(step > 0.0) || step > 1.0)
        throw std::invalid_argument("grid spacing must lie in (0, 1]");
    const double k = std::round(1.0 / step);
    if (std::abs(k * step - 1.0) > 1e-9)
        throw std::invalid_argument("grid spacing must divide 1");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i <= count; ++i)
        grid.push_back(static_cast<double>(i) / k);
    return grid;
}

namespace {

bool divides_half(double step) {
    if (!(step > 0.0))
        return false;
    const double k = std::round(0.5 / step);
    return k >= 1.0 && std::abs(k * step - 0.5) <= 1e-9;
}

} // namespace

Counterexample build_counterexample(double step, std::optional<double> nature_step) {
    if (!divides_half(step))
        throw std::invalid_argument("counterexample: action spacing must divide 0.5");
    const double pstep = nature_step.value_or(step);
    if (!divides_half(pstep) && pstep != 1.0)
        throw std::invalid_argument("counterexample: parameter spacing must divide 0.5 or equal 1");
    const auto actions = unit_grid(step);
    const auto params = unit_grid(pstep);

    Counterexample out;
    // -(1-p) a^2 - p (a-1)^2 rearranged so the value at a = 1/2 is exact.
    out.game = StaticGame::tabulate(actions, params, [](double a, double p) { return -a * a + p * (2.0 * a - 1.0); });

    FiniteRobustMDP& m = out.model;
    m.horizon = 1;
    m.states = {0.0};
    m.terminal_cost = {0.0};

    Stage st;
    st.actions = actions;
    std::vector<std::size_t> all(actions.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    st.admissible.assign(m.states.size(), all);
    st.disturbance = FiniteDisturbance{{0.0, 1.0}, {0.5, 0.5}};
    std::vector<Density> gens;
    for (double p : params)
        gens.push_back(Density{{2.0 * (1.0 - p), 2.0 * p}});
    st.ambiguity = AmbiguitySet::from_generators(std::move(gens));
    st.dynamics.transition = [](double, double a, double z) { return -(a - z) * (a - z); };
    // The cost is the next state before projection onto the one-point grid.
    st.dynamics.cost = [](double, double a, double z, double) { return -(a - z) * (a - z); };
    m.stages.push_back(std::move(st));
    return out;
}

} // namespace rmdp
