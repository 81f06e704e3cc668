#pragma once

#include "rmdp/model.hpp"
#include "rmdp/solver.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace rmdp {

/// Wind forecast: support in [0, B], reference law and alternative laws on it.
struct WindModel {
    std::vector<double> support;
    std::vector<double> reference;
    /// Each law must vanish wherever the reference does.
    std::vector<std::vector<double>> laws;
};

/// Binomial(trials, p) laws scaled onto {0, B/trials, ..., B}; reference is their average.
WindModel binomial_wind(double max_wind, std::size_t trials, const std::vector<double>& p);

/// Beta(alpha, beta) laws discretized at cell midpoints of [0, B]; reference is their average.
WindModel beta_wind(double max_wind, std::size_t points, const std::vector<std::pair<double, double>>& shapes);

struct EnergyParams {
    std::size_t horizon = 1;
    /// Storage capacity K.
    double capacity = 1.0;
    /// Upper end B of the bid and wind range.
    double max_wind = 1.0;
    double price = 1.0;
    double penalty = 1.0;
    std::size_t state_points = 11;
    std::size_t action_points = 11;
    /// Same wind model at every stage.
    WindModel wind;
};

/**
 * Storage state on linspace(0, K), bids on linspace(0, B). With wind z and bid a:
 * T = min(x + z - a, K) if z >= a, else max(x + z - a, 0);
 * c = -a P + (P + c_pen) (a - x - z)^+ when z < a, -a P otherwise. Terminal cost 0.
 */
FiniteRobustMDP energy_build(const EnergyParams& p);

struct StReduction {
    /// Index of the usual-order-minimal generator at each stage.
    std::vector<std::size_t> minimal;
    /// max |J_robust - J_classical under the minimal generator|
    double max_difference = 0.0;
};

/// Throws std::invalid_argument naming the stage if some stage has no usual-order-minimal generator.
StReduction energy_st_reduction_check(const FiniteRobustMDP& model);

} // namespace rmdp
