#pragma once

#include "rmdp/ambiguity.hpp"
#include "rmdp/distribution.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmdp {

using TransitionFn = std::function<double(double x, double a, double z)>;
/// One-stage cost c(x, a, z, x'). The disturbance is passed along because some
/// costs (shortage penalties) are not recoverable from the projected x' alone.
using CostFn = std::function<double(double x, double a, double z, double x_next)>;

/// Monotone-model assertions: D decreasing, T and c increasing in the state, c_N increasing.
struct MonotoneFlags {
    bool admissible_decreasing = false;
    bool transition_increasing = false;
    bool cost_increasing = false;
    bool terminal_increasing = false;

    bool all() const {
        return admissible_decreasing && transition_increasing && cost_increasing && terminal_increasing;
    }
};

/// Convex-model assertions: convex admissible graph, T convex in (x, a),
/// c convex in (x, a, x'), c_N convex.
struct ConvexFlags {
    bool admissible_convex = false;
    bool transition_convex = false;
    bool cost_convex = false;
    bool terminal_convex = false;

    bool all() const { return admissible_convex && transition_convex && cost_convex && terminal_convex; }
};

struct StageDynamics {
    TransitionFn transition;
    CostFn cost;
    MonotoneFlags monotone;
    ConvexFlags convex;
};

struct Stage {
    std::vector<double> actions;
    /// admissible[s]: sorted admissible action indices at state s.
    std::vector<std::vector<std::size_t>> admissible;
    FiniteDisturbance disturbance;
    AmbiguitySet ambiguity;
    StageDynamics dynamics;
};

/// mask[n][s][a]: allowed generator indices; empty for inadmissible actions.
using GeneratorMask = std::vector<std::vector<std::vector<std::vector<std::size_t>>>>;

struct FiniteRobustMDP {
    std::size_t horizon = 0;
    std::vector<double> states;
    std::vector<Stage> stages;
    std::vector<double> terminal_cost;
    std::optional<GeneratorMask> generator_mask;

    std::size_t num_states() const { return states.size(); }
    bool is_admissible(std::size_t n, std::size_t s, std::size_t a) const;
    /// Allowed generator indices at (n, s, a); empty span means "all".
    std::span<const std::size_t> allowed_generators(std::size_t n, std::size_t s, std::size_t a) const;
};

/// Every broken structural invariant, each naming stage/state/action indices.
std::vector<std::string> validate(const FiniteRobustMDP& model);

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Throws ValidationError when validate() reports anything.
void require_valid(const FiniteRobustMDP& model);

/// Nearest grid index; ties go to the lower index; clamps outside the grid.
std::size_t project_to_grid(std::span<const double> grid, double x);

/// Law of the projected next state under the given density.
DiscreteDistribution induced_distribution(const FiniteRobustMDP& model, std::size_t n, std::size_t s,
                                          std::size_t a, const Density& y);

/**
 * Next-state indices and one-stage costs of a stage, evaluated once.
 * Entries of inadmissible (s, a) pairs are left at zero.
 */
struct StageTable {
    std::size_t actions = 0;
    std::size_t support = 0;
    std::vector<std::size_t> next;
    std::vector<double> cost;

    std::size_t offset(std::size_t s, std::size_t a) const { return (s * actions + a) * support; }
};

StageTable compile_stage(const FiniteRobustMDP& model, std::size_t n);

/// Payoff vector c + v(next) over the disturbance support at (s, a).
std::vector<double> stage_payoff(const StageTable& table, std::size_t s, std::size_t a,
                                 std::span<const double> v_next);

/// Contradictions between the declared monotone/convex flags and sampled evaluations.
std::vector<std::string> flag_contradictions(const FiniteRobustMDP& model, std::size_t samples, std::uint64_t seed);

} // namespace rmdp
