#include "doctest.h"

#include "rmdp/lq.hpp"
#include "rmdp/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

using namespace rmdp;

TEST_CASE("parallel_for visits every index once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 1);
    for (const auto& h : hits)
        CHECK(h.load() == 1);
}

TEST_CASE("parallel_for rethrows a worker exception") {
    CHECK_THROWS_AS(parallel_for(
                        200,
                        [](std::size_t i) {
                            if (i == 137)
                                throw std::runtime_error("boom");
                        },
                        1),
                    std::runtime_error);
}

TEST_CASE("results do not depend on the worker count") {
    LQParams p;
    p.horizon = 3;
    p.Q = {0.5, 0.2, 0.7, 1.0};
    p.R = {0.4, 0.9, 0.3};
    LQBox b;
    b.mu_u = {0.5, 1.0};
    b.sigma_u = {0.1, 0.3};
    b.mu_v = {-0.5, 0.4};
    b.sigma_v = {0.2, 0.4};
    b.sigma_uv = {-0.05, 0.05};
    b.w2 = {0.0, 0.2};
    p.boxes = {b, b, b};
    p.points = 3;
    const auto sol = lq_solve_closed_form(p);
    const std::vector<double> xs{-1.0, 0.5};
    const auto grid = linspace(-3.0, 3.0, 121);
    ::setenv("ROBUST_MDP_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    const auto serial = lq_verify_stagewise(p, sol, xs, grid);
    ::setenv("ROBUST_MDP_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    const auto threaded = lq_verify_stagewise(p, sol, xs, grid);
    ::unsetenv("ROBUST_MDP_THREADS");
    CHECK(serial.deviation == threaded.deviation);
    CHECK(serial.interchange == threaded.interchange);
    CHECK(serial.shortfall == threaded.shortfall);
}
