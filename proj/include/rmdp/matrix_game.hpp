#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace rmdp {

struct ColumnMixture {
    /// Mixture over columns attaining the max-min.
    std::vector<double> weights;
    /// min over rows of the mixed payoff, evaluated with the returned weights.
    double value = 0.0;
    /// Lowest row within 1e-12 of that minimum.
    std::size_t response = 0;
};

/**
 * max over column mixtures lambda of min over rows r of sum_g lambda_g m[r][g].
 *
 * Solved by a double-oracle loop: a restricted game on a few rows and columns
 * is solved exactly by the simplex method, then each side's best response on
 * the full matrix is added until neither side can improve.
 */
ColumnMixture max_min_over_column_mixtures(const std::vector<std::vector<double>>& m);

/// Optimal mixtures of both players of a small zero-sum game where the row
/// player minimizes. Returns (row mixture, column mixture).
std::pair<std::vector<double>, std::vector<double>> solve_zero_sum(const std::vector<std::vector<double>>& m);

} // namespace rmdp
