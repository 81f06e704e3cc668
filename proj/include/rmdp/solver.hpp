#pragma once

#include "rmdp/model.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rmdp {

/// Argmin/argmax tie tolerance; the lowest index within it wins.
inline constexpr double kTieTol = 1e-12;

/// values[n][s] for n = 0..N.
using ValueTable = std::vector<std::vector<double>>;
/// controller[n][s]: action index.
using ControllerPolicy = std::vector<std::vector<std::size_t>>;
/// nature[n][s][a]: generator index, kComonotone for spectral stages, kUnset where a is inadmissible.
using NaturePolicy = std::vector<std::vector<std::vector<std::size_t>>>;

struct SolveResult {
    ValueTable J;
    ControllerPolicy controller;
    NaturePolicy nature;
    /// Worst-case density at the chosen action, per (n, s).
    std::vector<std::vector<Density>> witness;
};

/**
 * Nature-first (sup-inf) solution. Nature mixes over a candidate family per
 * stage: the generators (intersected over the masks of the admissible actions)
 * or, for spectral stages, the ordering expansion of the spectrum.
 */
struct NatureFirstResult {
    ValueTable J;
    /// family[n][s]: candidate generator indices nature mixes over.
    std::vector<std::vector<std::vector<std::size_t>>> family;
    /// weights[n][s][k]: mixture weight of family[n][s][k].
    std::vector<std::vector<std::vector<double>>> weights;
    std::vector<std::vector<Density>> nature_density;
    /// Controller's response to nature's mixture.
    ControllerPolicy response;
    /// responses[n][s][k]: controller's best response to the pure candidate k.
    std::vector<std::vector<std::vector<std::size_t>>> responses;
};

class PolicyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// sum_i p_i y_i [c(x_s, a, z_i, x'_i) + v_next(x'_i)] with x'_i the projected next state.
double operator_L(const FiniteRobustMDP& model, std::size_t n, std::size_t s, std::size_t a, const Density& y,
                  std::span<const double> v_next);

SolveResult solve_robust(const FiniteRobustMDP& model);
NatureFirstResult solve_nature_first(const FiniteRobustMDP& model);

ValueTable evaluate_pair(const FiniteRobustMDP& model, const ControllerPolicy& controller,
                         const NaturePolicy& nature);
ValueTable evaluate_robust_policy(const FiniteRobustMDP& model, const ControllerPolicy& controller);

/// Risk-neutral backward induction under one fixed density per stage.
ValueTable classical_values(const FiniteRobustMDP& model, const std::vector<Density>& per_stage);

enum class Monotonicity { Increasing, Decreasing };
bool check_value_monotone(const ValueTable& J, Monotonicity direction);

/// Candidate densities nature may pick at (n, s, a): masked generators, or the
/// ordering expansion of a spectral stage.
std::vector<Density> nature_candidates(const FiniteRobustMDP& model, std::size_t n, std::size_t s, std::size_t a);

} // namespace rmdp
