#include "rmdp/lq.hpp"

#include "rmdp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmdp {

std::vector<double> linspace(double lo, double hi, std::size_t points) {
    if (points == 0)
        throw std::invalid_argument("linspace: zero points");
    if (points == 1 || lo == hi)
        return {lo};
    std::vector<double> out(points);
    const double span = hi - lo;
    for (std::size_t i = 0; i < points; ++i)
        out[i] = lo + span * static_cast<double>(i) / static_cast<double>(points - 1);
    out.back() = hi;
    return out;
}

std::vector<std::string> lq_violations(const LQParams& p) {
    std::vector<std::string> v;
    const std::size_t N = p.horizon;
    if (N == 0)
        v.push_back("horizon must be at least 1");
    if (p.Q.size() != N + 1)
        v.push_back("Q must have horizon + 1 entries");
    if (p.R.size() != N)
        v.push_back("R must have horizon entries");
    if (p.boxes.size() != N)
        v.push_back("boxes must have horizon entries");
    if (p.points == 0)
        v.push_back("points must be positive");
    for (std::size_t n = 0; n < p.Q.size(); ++n)
        if (!(p.Q[n] >= 0.0) || !std::isfinite(p.Q[n]))
            v.push_back("Q[" + std::to_string(n) + "] must be finite and nonnegative");
    for (std::size_t n = 0; n < p.R.size(); ++n)
        if (!(p.R[n] > 0.0) || !std::isfinite(p.R[n]))
            v.push_back("R[" + std::to_string(n) + "] must be finite and positive");
    for (std::size_t n = 0; n < p.boxes.size(); ++n) {
        const LQBox& b = p.boxes[n];
        const auto check = [&](const Interval& iv, const char* name, bool nonneg) {
            const std::string where = "box " + std::to_string(n) + " " + name;
            if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
                v.push_back(where + ": need finite lo <= hi");
            else if (nonneg && iv.lo < 0.0)
                v.push_back(where + ": must be nonnegative");
        };
        check(b.mu_u, "mu_u", false);
        check(b.sigma_u, "sigma_u", true);
        check(b.mu_v, "mu_v", false);
        check(b.sigma_v, "sigma_v", true);
        check(b.sigma_uv, "sigma_uv", false);
        check(b.w2, "w2", true);
    }
    return v;
}

std::vector<LQTheta> lq_theta_grid(const LQBox& box, std::size_t points, bool trust_bracket_monotonicity) {
    const auto mu_u = linspace(box.mu_u.lo, box.mu_u.hi, points);
    const auto mu_v = linspace(box.mu_v.lo, box.mu_v.hi, points);
    const auto s_uv = linspace(box.sigma_uv.lo, box.sigma_uv.hi, points);
    const auto s_u = trust_bracket_monotonicity ? std::vector<double>{box.sigma_u.hi}
                                                : linspace(box.sigma_u.lo, box.sigma_u.hi, points);
    const auto s_v = trust_bracket_monotonicity ? std::vector<double>{box.sigma_v.hi}
                                                : linspace(box.sigma_v.lo, box.sigma_v.hi, points);
    std::vector<LQTheta> out;
    for (double a : mu_u)
        for (double b : s_u)
            for (double c : mu_v)
                for (double d : s_v)
                    for (double e : s_uv)
                        if (e * e <= b * b * d * d)
                            out.push_back({a, b, c, d, e, box.w2.hi});
    return out;
}

namespace {

// Q + K E[U^2] - K^2 E[UV]^2 / (R + K E[V^2]); equals Q + K * bracket for K > 0.
double next_k(double Q, double R, double K, const LQTheta& t) {
    const double euv = t.euv();
    return Q + K * t.eu2() - K * K * euv * euv / (R + K * t.ev2());
}

void require_ok(const LQParams& p) {
    const auto v = lq_violations(p);
    if (!v.empty())
        throw std::invalid_argument("invalid LQ parameters: " + v.front());
}

} // namespace

LQSolution lq_solve_closed_form(const LQParams& p) {
    require_ok(p);
    const std::size_t N = p.horizon;
    LQSolution sol;
    sol.K.assign(N + 1, 0.0);
    sol.constant.assign(N + 1, 0.0);
    sol.L.assign(N, 0.0);
    sol.theta.assign(N, LQTheta{});
    sol.K[N] = p.Q[N];
    for (std::size_t step = 0; step < N; ++step) {
        const std::size_t n = N - 1 - step;
        const auto grid = lq_theta_grid(p.boxes[n], p.points, p.trust_bracket_monotonicity);
        if (grid.empty())
            throw std::invalid_argument("LQ stage " + std::to_string(n) + ": no PSD-feasible parameter point");
        const double K1 = sol.K[n + 1];
        std::size_t best = 0;
        double best_k = next_k(p.Q[n], p.R[n], K1, grid[0]);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const double k = next_k(p.Q[n], p.R[n], K1, grid[i]);
            if (k > best_k) {
                best_k = k;
                best = i;
            }
        }
        const LQTheta& t = grid[best];
        sol.K[n] = best_k;
        sol.L[n] = -K1 * t.euv() / (p.R[n] + K1 * t.ev2());
        sol.constant[n] = sol.constant[n + 1] + K1 * p.boxes[n].w2.hi;
        sol.theta[n] = t;
    }
    return sol;
}

LQVerification lq_verify_stagewise(const LQParams& p, const LQSolution& sol, std::span<const double> sample_states,
                                   std::span<const double> action_grid) {
    require_ok(p);
    if (action_grid.empty())
        throw std::invalid_argument("lq_verify_stagewise: empty action grid");
    const std::size_t N = p.horizon;
    if (sol.K.size() != N + 1 || sol.constant.size() != N + 1 || sol.theta.size() != N)
        throw std::invalid_argument("lq_verify_stagewise: solution does not match the horizon");

    LQVerification out;
    out.recovered.assign(N, std::vector<LQTheta>(sample_states.size()));
    out.shortfall.assign(N, std::vector<double>(sample_states.size(), 0.0));
    std::vector<double> deviation(N, 0.0), interchange(N, 0.0);

    parallel_for(
        N,
        [&](std::size_t n) {
            auto grid = lq_theta_grid(p.boxes[n], p.points, p.trust_bracket_monotonicity);
            // W^2 enters linearly and independently; keep its whole grid.
            const auto w2 = linspace(p.boxes[n].w2.lo, p.boxes[n].w2.hi, p.points);
            std::vector<LQTheta> full;
            full.reserve(grid.size() * w2.size());
            for (const auto& t : grid)
                for (double w : w2) {
                    LQTheta u = t;
                    u.w2 = w;
                    full.push_back(u);
                }
            if (full.empty())
                throw std::invalid_argument("LQ stage " + std::to_string(n) + ": no PSD-feasible parameter point");
            const double K1 = sol.K[n + 1], c1 = sol.constant[n + 1];
            const double Q = p.Q[n], R = p.R[n];
            for (std::size_t k = 0; k < sample_states.size(); ++k) {
                const double x = sample_states[k];
                const auto stage = [&](double a, const LQTheta& t) {
                    const double second = x * x * t.eu2() + a * a * t.ev2() + 2.0 * x * a * t.euv() + t.w2;
                    return Q * x * x + R * a * a + K1 * second + c1;
                };
                double upper = std::numeric_limits<double>::infinity();
                for (double a : action_grid) {
                    double worst = -std::numeric_limits<double>::infinity();
                    for (const auto& t : full)
                        worst = std::max(worst, stage(a, t));
                    upper = std::min(upper, worst);
                }
                double lower = -std::numeric_limits<double>::infinity();
                std::size_t arg = 0;
                for (std::size_t i = 0; i < full.size(); ++i) {
                    double least = std::numeric_limits<double>::infinity();
                    for (double a : action_grid)
                        least = std::min(least, stage(a, full[i]));
                    if (least > lower) {
                        lower = least;
                        arg = i;
                    }
                }
                double at_star = std::numeric_limits<double>::infinity();
                for (double a : action_grid)
                    at_star = std::min(at_star, stage(a, sol.theta[n]));
                const double closed = sol.K[n] * x * x + sol.constant[n];
                out.shortfall[n][k] = std::max(0.0, lower - at_star);
                deviation[n] = std::max(deviation[n], std::abs(upper - closed));
                interchange[n] = std::max(interchange[n], std::abs(upper - lower));
                out.recovered[n][k] = full[arg];
            }
        },
        1);
    out.deviation = *std::max_element(deviation.begin(), deviation.end());
    out.interchange = *std::max_element(interchange.begin(), interchange.end());
    return out;
}

} // namespace rmdp
