#pragma once

#include "rmdp/solver.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rmdp {

/// One-shot game: the controller picks a from `actions`, nature picks theta from `params`.
struct StaticGame {
    std::vector<double> actions;
    std::vector<double> params;
    /// payoff[i][j] = expected cost of actions[i] against params[j].
    std::vector<std::vector<double>> payoff;

    static StaticGame tabulate(std::vector<double> actions, std::vector<double> params,
                               const std::function<double(double, double)>& f);
};

struct GameValue {
    double value = 0.0;
    /// Action index for the upper value, parameter index for the lower value.
    std::size_t index = 0;
};

/// min over a of max over theta; lowest action index on ties.
GameValue upper_value(const StaticGame& g);
/// max over theta of min over a; lowest parameter index on ties.
GameValue lower_value(const StaticGame& g);
/// max over theta of sum_a mix[a] payoff(a, theta).
double mixing_value(const StaticGame& g, std::span<const double> mix);

struct SaddlePoint {
    std::size_t action = 0;
    std::size_t param = 0;
};

/// First (action, param) pair, in lexicographic index order, satisfying both
/// saddle inequalities within tol over the full grids.
std::optional<SaddlePoint> saddle_search(const StaticGame& g, double tol);

/// solve_robust J minus solve_nature_first J, pointwise.
ValueTable gap(const FiniteRobustMDP& model);

struct Counterexample {
    StaticGame game;
    FiniteRobustMDP model;
};

/**
 * Static game with payoff -(1-p) a^2 - p (a-1)^2 on a, p in [0, 1], and the
 * equivalent one-stage model on the single state 0: Z ~ Bernoulli(1/2) reference,
 * nature's p embedded as the density (2(1-p), 2p), T(x, a, z) = -(a - z)^2 and
 * the cost equal to T before projection.
 * Action and parameter grids have spacing `step` and `nature_step`; both must
 * divide 0.5 (nature_step may also be 1).
 */
Counterexample build_counterexample(double step, std::optional<double> nature_step = std::nullopt);

/// Grid {0, 1/k, ..., 1} for a spacing 1/k.
std::vector<double> unit_grid(double step);

} // namespace rmdp
