#include "rmdp/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace rmdp {

namespace {

constexpr double kPivotTol = 1e-12;

// Bland-rule simplex for max sum(u) s.t. B^T u <= 1, u >= 0 with B >= 1 entrywise.
// Returns (u, x) where x are the dual values of the column constraints.
std::pair<std::vector<double>, std::vector<double>> simplex_game(const std::vector<std::vector<double>>& b) {
    const std::size_t R = b.size();
    const std::size_t C = b.front().size();
    const std::size_t width = R + C + 1;
    std::vector<std::vector<double>> t(C, std::vector<double>(width, 0.0));
    std::vector<double> obj(width, 0.0);
    std::vector<std::size_t> basis(C);
    for (std::size_t g = 0; g < C; ++g) {
        for (std::size_t r = 0; r < R; ++r)
            t[g][r] = b[r][g];
        t[g][R + g] = 1.0;
        t[g][width - 1] = 1.0;
        basis[g] = R + g;
    }
    for (std::size_t r = 0; r < R; ++r)
        obj[r] = -1.0;

    for (std::size_t iter = 0; iter < 100000; ++iter) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (obj[j] < -kPivotTol) {
                enter = j;
                break;
            }
        if (enter == width)
            break;
        std::size_t leave = C;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < C; ++i) {
            if (t[i][enter] <= kPivotTol)
                continue;
            const double ratio = t[i][width - 1] / t[i][enter];
            if (leave == C || ratio < best - kPivotTol) {
                best = ratio;
                leave = i;
            } else if (ratio <= best + kPivotTol && basis[i] < basis[leave]) {
                leave = i;
            }
        }
        if (leave == C)
            throw std::runtime_error("matrix game: unbounded simplex step");
        const double piv = t[leave][enter];
        for (auto& v : t[leave])
            v /= piv;
        for (std::size_t i = 0; i < C; ++i) {
            if (i == leave || t[i][enter] == 0.0)
                continue;
            const double f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j)
                t[i][j] -= f * t[leave][j];
        }
        const double f = obj[enter];
        for (std::size_t j = 0; j < width; ++j)
            obj[j] -= f * t[leave][j];
        basis[leave] = enter;
    }

    std::vector<double> u(R, 0.0), x(C, 0.0);
    for (std::size_t i = 0; i < C; ++i)
        if (basis[i] < R)
            u[basis[i]] = std::max(0.0, t[i][width - 1]);
    for (std::size_t g = 0; g < C; ++g)
        x[g] = std::max(0.0, obj[R + g]);
    return {u, x};
}

std::vector<double> normalized(std::vector<double> v) {
    double total = 0.0;
    for (double x : v)
        total += x;
    if (!(total > 0.0)) {
        std::fill(v.begin(), v.end(), 0.0);
        v.front() = 1.0;
        return v;
    }
    for (auto& x : v)
        x /= total;
    return v;
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> solve_zero_sum(const std::vector<std::vector<double>>& m) {
    if (m.empty() || m.front().empty())
        throw std::invalid_argument("solve_zero_sum: empty payoff matrix");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& row : m)
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const std::size_t R = m.size(), C = m.front().size();
    if (!(hi > lo)) {
        std::vector<double> rows(R, 0.0), cols(C, 0.0);
        rows.front() = cols.front() = 1.0;
        return {rows, cols};
    }
    std::vector<std::vector<double>> b(R, std::vector<double>(C));
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t g = 0; g < C; ++g)
            b[r][g] = 1.0 + (m[r][g] - lo) / (hi - lo);
    auto [u, x] = simplex_game(b);
    return {normalized(std::move(u)), normalized(std::move(x))};
}

ColumnMixture max_min_over_column_mixtures(const std::vector<std::vector<double>>& m) {
    if (m.empty() || m.front().empty())
        throw std::invalid_argument("max_min_over_column_mixtures: empty payoff matrix");
    const std::size_t R = m.size(), C = m.front().size();
    double scale = 0.0;
    for (const auto& row : m)
        for (double v : row)
            scale = std::max(scale, std::abs(v));
    const double stop_tol = 1e-14 * (1.0 + scale);

    std::vector<double> lambda(C, 0.0);
    std::vector<double> mixed_rows(R);
    auto row_values = [&] {
        for (std::size_t r = 0; r < R; ++r) {
            double acc = 0.0;
            for (std::size_t g = 0; g < C; ++g)
                if (lambda[g] != 0.0)
                    acc += lambda[g] * m[r][g];
            mixed_rows[r] = acc;
        }
    };

    std::vector<std::size_t> rows, cols{0};
    lambda[0] = 1.0;
    row_values();
    rows.push_back(static_cast<std::size_t>(std::min_element(mixed_rows.begin(), mixed_rows.end()) - mixed_rows.begin()));

    for (std::size_t iter = 0; iter < R + C + 2; ++iter) {
        std::vector<std::vector<double>> sub(rows.size(), std::vector<double>(cols.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                sub[i][j] = m[rows[i]][cols[j]];
        const auto [w, x] = solve_zero_sum(sub);

        std::fill(lambda.begin(), lambda.end(), 0.0);
        for (std::size_t j = 0; j < cols.size(); ++j)
            lambda[cols[j]] = x[j];
        row_values();
        const std::size_t best_row =
            static_cast<std::size_t>(std::min_element(mixed_rows.begin(), mixed_rows.end()) - mixed_rows.begin());
        const double lower = mixed_rows[best_row];

        std::size_t best_col = 0;
        double upper = -std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < C; ++g) {
            double acc = 0.0;
            for (std::size_t i = 0; i < rows.size(); ++i)
                acc += w[i] * m[rows[i]][g];
            if (acc > upper) {
                upper = acc;
                best_col = g;
            }
        }
        if (upper - lower <= stop_tol)
            break;
        bool grew = false;
        if (std::find(rows.begin(), rows.end(), best_row) == rows.end()) {
            rows.push_back(best_row);
            grew = true;
        }
        if (std::find(cols.begin(), cols.end(), best_col) == cols.end()) {
            cols.push_back(best_col);
            grew = true;
        }
        if (!grew)
            break;
    }

    ColumnMixture out;
    out.weights = lambda;
    out.value = *std::min_element(mixed_rows.begin(), mixed_rows.end());
    for (std::size_t r = 0; r < R; ++r)
        if (mixed_rows[r] <= out.value + 1e-12) {
            out.response = r;
            break;
        }
    return out;
}

} // namespace rmdp
