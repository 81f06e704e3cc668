#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rmdp {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Parameter box of one stage's disturbance (U, V, W) in the scalar Gaussian family.
struct LQBox {
    Interval mu_u, sigma_u, mu_v, sigma_v, sigma_uv;
    /// Range of E[W^2]; W is independent of (U, V) with mean zero.
    Interval w2;
};

struct LQParams {
    std::size_t horizon = 1;
    /// Q_0..Q_N >= 0
    std::vector<double> Q;
    /// R_0..R_{N-1} > 0
    std::vector<double> R;
    /// boxes[n] governs the disturbance driving x_n -> x_{n+1}.
    std::vector<LQBox> boxes;
    /// Grid points per box coordinate (a degenerate interval always has one).
    std::size_t points = 11;
    /// Pin sigma_u and sigma_v to their maxima instead of searching them.
    bool trust_bracket_monotonicity = false;
};

struct LQTheta {
    double mu_u = 0.0, sigma_u = 0.0, mu_v = 0.0, sigma_v = 0.0, sigma_uv = 0.0, w2 = 0.0;

    double eu2() const { return sigma_u * sigma_u + mu_u * mu_u; }
    double ev2() const { return sigma_v * sigma_v + mu_v * mu_v; }
    double euv() const { return sigma_uv + mu_u * mu_v; }
    friend bool operator==(const LQTheta&, const LQTheta&) = default;
};

struct LQSolution {
    /// J_n(x) = K[n] x^2 + constant[n]
    std::vector<double> K;
    std::vector<double> constant;
    /// d_n(x) = L[n] x
    std::vector<double> L;
    /// Nature's maximizing parameter point per stage.
    std::vector<LQTheta> theta;
};

/// Violations of the parameter invariants (lengths, signs, interval order).
std::vector<std::string> lq_violations(const LQParams& p);

/// Parameter grid of a stage box, PSD-infeasible points removed.
std::vector<LQTheta> lq_theta_grid(const LQBox& box, std::size_t points, bool trust_bracket_monotonicity);

/// Backward recursion with the bracket maximized by exhaustive grid search.
/// Throws std::invalid_argument on invalid params or an empty PSD-feasible grid.
LQSolution lq_solve_closed_form(const LQParams& p);

struct LQVerification {
    /// max |min_a max_theta stage(x, a, theta) - (K x^2 + const)|
    double deviation = 0.0;
    /// max |min_a max_theta - max_theta min_a|
    double interchange = 0.0;
    /// recovered[n][k]: argmax over theta of min_a at sample_states[k]; lowest grid index on ties.
    std::vector<std::vector<LQTheta>> recovered;
    /// shortfall[n][k]: max over theta of min_a minus min_a at the closed-form theta (>= 0).
    std::vector<std::vector<double>> shortfall;
};

/// Stagewise numeric check of the closed form on an action grid and the parameter grid.
LQVerification lq_verify_stagewise(const LQParams& p, const LQSolution& sol, std::span<const double> sample_states,
                                   std::span<const double> action_grid);

/// Evenly spaced grid lo, lo + h, ..., hi with the given number of points.
std::vector<double> linspace(double lo, double hi, std::size_t points);

} // namespace rmdp
