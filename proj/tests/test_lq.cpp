#include "doctest.h"

#include "rmdp/lq.hpp"
#include "rmdp/random.hpp"

#include <algorithm>

using namespace rmdp;

namespace {

LQParams hand_case() {
    LQParams p;
    p.horizon = 1;
    p.Q = {1.0, 1.0};
    p.R = {1.0};
    LQBox b;
    b.mu_u = {1.0, 1.0};
    b.mu_v = {1.0, 1.0};
    p.boxes = {b};
    return p;
}

Interval draw(Rng& rng, double lo, double hi, double width) {
    const double a = rng.uniform(lo, hi);
    return {a, a + rng.uniform(0.0, width)};
}

LQParams draw_params(Rng& rng) {
    LQParams p;
    p.horizon = 1 + rng.index(3);
    for (std::size_t n = 0; n <= p.horizon; ++n)
        p.Q.push_back(rng.uniform(0.0, 1.0));
    for (std::size_t n = 0; n < p.horizon; ++n) {
        p.R.push_back(rng.uniform(0.2, 1.0));
        LQBox b;
        b.mu_u = draw(rng, -1.0, 1.0, 0.5);
        b.sigma_u = draw(rng, 0.0, 0.5, 0.5);
        b.mu_v = draw(rng, -1.0, 1.0, 0.5);
        b.sigma_v = draw(rng, 0.0, 0.5, 0.5);
        b.sigma_uv = draw(rng, -0.3, 0.1, 0.4);
        b.w2 = draw(rng, 0.0, 0.5, 0.5);
        p.boxes.push_back(b);
    }
    p.points = 5;
    return p;
}

// Redraws boxes whose covariance range admits no PSD point.
LQParams random_params(Rng& rng) {
    for (;;) {
        LQParams p = draw_params(rng);
        bool feasible = true;
        for (const auto& b : p.boxes)
            feasible = feasible && !lq_theta_grid(b, p.points, false).empty();
        if (feasible)
            return p;
    }
}

} // namespace

TEST_CASE("linspace pins both ends") {
    const auto g = linspace(-1.0, 1.0, 5);
    CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    CHECK(linspace(2.0, 2.0, 7) == std::vector<double>{2.0});
    CHECK_THROWS(linspace(0.0, 1.0, 0));
}

TEST_CASE("degenerate box hand case") {
    // K_0 = 1 + 1 - 1 / (1 + 1), L_0 = -1 / (1 + 1).
    const auto sol = lq_solve_closed_form(hand_case());
    CHECK(sol.K[0] == 1.5);
    CHECK(sol.L[0] == -0.5);
    CHECK(sol.constant[0] == 0.0);
    CHECK(sol.K[1] == 1.0);
    const std::vector<double> xs{-1.0, 0.0, 1.0};
    const auto grid = linspace(-2.0, 2.0, 4001);
    const auto v = lq_verify_stagewise(hand_case(), sol, xs, grid);
    CHECK(v.deviation <= 1e-6);
    CHECK(v.interchange <= 1e-6);
}

TEST_CASE("zero state costs give zero values") {
    auto p = hand_case();
    p.Q = {0.0, 0.0};
    p.boxes[0].w2 = {0.0, 0.3};
    const auto sol = lq_solve_closed_form(p);
    CHECK(sol.K[0] == 0.0);
    CHECK(sol.constant[0] == 0.0);
    const std::vector<double> xs{-1.0, 1.0};
    const auto grid = linspace(-1.0, 1.0, 201);
    CHECK(lq_verify_stagewise(p, sol, xs, grid).deviation == 0.0);
}

TEST_CASE("nature removes the correlation and the controller stops") {
    auto p = hand_case();
    p.boxes[0].mu_v = {0.5, 0.5};
    p.boxes[0].sigma_u = {1.0, 1.0};
    p.boxes[0].sigma_v = {1.0, 1.0};
    p.boxes[0].sigma_uv = {-0.5, 0.5};
    const auto sol = lq_solve_closed_form(p);
    CHECK(sol.theta[0].euv() == 0.0);
    CHECK(sol.L[0] == 0.0);
    // Q_0 + K_1 E[U^2] = 1 + 2
    CHECK(sol.K[0] == 3.0);
}

TEST_CASE("a box without a pure saddle separates the closed form from the robust value") {
    // mu_V in {-1, 1}: each point alone lets the controller cancel half the cost,
    // but against both the best action is 0.
    auto p = hand_case();
    p.boxes[0].mu_v = {-1.0, 1.0};
    p.points = 2;
    const auto sol = lq_solve_closed_form(p);
    CHECK(sol.K[0] == 1.5);
    const std::vector<double> xs{1.0};
    const auto grid = linspace(-2.0, 2.0, 4001);
    const auto v = lq_verify_stagewise(p, sol, xs, grid);
    CHECK(v.deviation == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("parameter violations") {
    auto p = hand_case();
    CHECK(lq_violations(p).empty());
    p.R = {0.0};
    CHECK_FALSE(lq_violations(p).empty());
    p = hand_case();
    p.boxes[0].sigma_u = {0.5, 0.1};
    CHECK_FALSE(lq_violations(p).empty());
    p = hand_case();
    p.Q = {1.0};
    CHECK_FALSE(lq_violations(p).empty());
    CHECK_THROWS_AS(lq_solve_closed_form(p), std::invalid_argument);
    p = hand_case();
    p.boxes[0].sigma_uv = {1.0, 1.0};
    CHECK_THROWS_AS(lq_solve_closed_form(p), std::invalid_argument);
}

TEST_CASE("PSD filter keeps only feasible covariances") {
    LQBox b;
    b.sigma_u = {0.0, 1.0};
    b.sigma_v = {0.0, 1.0};
    b.sigma_uv = {-1.0, 1.0};
    for (const auto& t : lq_theta_grid(b, 5, false))
        CHECK(t.sigma_uv * t.sigma_uv <= t.sigma_u * t.sigma_u * t.sigma_v * t.sigma_v);
    for (const auto& t : lq_theta_grid(b, 5, true)) {
        CHECK(t.sigma_u == 1.0);
        CHECK(t.sigma_v == 1.0);
    }
}

TEST_CASE("property: K_n >= Q_n and pinning the variances keeps the maximum") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_params(rng);
        const auto sol = lq_solve_closed_form(p);
        for (std::size_t n = 0; n <= p.horizon; ++n)
            CHECK(sol.K[n] >= p.Q[n]);
        for (std::size_t n = 0; n < p.horizon; ++n)
            CHECK(sol.constant[n] >= sol.constant[n + 1]);
        p.trust_bracket_monotonicity = true;
        const auto pinned = lq_solve_closed_form(p);
        CHECK(pinned.K == sol.K);
    }
}

TEST_CASE("property: verification deviation never undercuts the grid minimum") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_params(rng);
        const auto sol = lq_solve_closed_form(p);
        const std::vector<double> xs{-1.0, 0.5};
        const auto v = lq_verify_stagewise(p, sol, xs, linspace(-4.0, 4.0, 161));
        // min-max can never fall below max-min
        CHECK(v.interchange >= 0.0);
        for (const auto& row : v.shortfall)
            for (double s : row)
                CHECK(s >= 0.0);
    }
}
