#include "doctest.h"

#include "rmdp/game.hpp"
#include "rmdp/oracle.hpp"
#include "support/hand_models.hpp"
#include "support/random_instances.hpp"

using namespace rmdp;

TEST_CASE("oracle on zero costs is zero") {
    const auto r = oracle_min_max(testing::zero_cost_model(2));
    CHECK(r.values == std::vector<double>{0.0, 0.0});
}

TEST_CASE("oracle on the coarse counterexample") {
    const auto ce = build_counterexample(0.5);
    CHECK(oracle_min_max(ce.model).values[0] == -0.25);
    CHECK(oracle_history_value(ce.model)[0] == -0.25);
}

TEST_CASE("property: Markov oracle equals solve_robust") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        testing::RandomOptions opt;
        opt.masks = trial % 2 == 0;
        const auto m = testing::random_instance(rng, {2, 2, 2, 2, 2}, opt);
        const auto r = oracle_min_max(m);
        const auto J = solve_robust(m).J;
        for (std::size_t s = 0; s < m.num_states(); ++s)
            CHECK(std::abs(r.values[s] - J[0][s]) <= 1e-12);
        // The reported optimal pair reproduces the oracle value.
        REQUIRE(r.controllers.size() == m.num_states());
    }
}

TEST_CASE("property: history oracle equals solve_robust for N <= 2") {
    Rng rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = testing::random_instance(rng, {2, 2, 2, 2, 2});
        const auto h = oracle_history_value(m);
        const auto J = solve_robust(m).J;
        for (std::size_t s = 0; s < m.num_states(); ++s)
            CHECK(std::abs(h[s] - J[0][s]) <= 1e-12);
    }
}

TEST_CASE("history oracle with singleton ambiguity is the classical recursion") {
    const auto m = testing::two_state_model(2);
    // Classical recursion with the cheap action a = 0 and states equal to their indices.
    std::vector<double> J1{0.0, 0.0}, J0{0.0, 0.0};
    for (int s = 0; s < 2; ++s)
        J1[s] = 0.5 * (0.0 + m.terminal_cost[0]) + 0.5 * (s + m.terminal_cost[1]);
    for (int s = 0; s < 2; ++s)
        J0[s] = 0.5 * (0.0 + J1[0]) + 0.5 * (s + J1[1]);
    const auto h = oracle_history_value(m);
    CHECK(h[0] == doctest::Approx(J0[0]).epsilon(1e-15));
    CHECK(h[1] == doctest::Approx(J0[1]).epsilon(1e-15));
}

TEST_CASE("oracle refusals") {
    Rng rng(41);
    const auto m = testing::random_instance(rng, {4, 3, 3, 3, 3});
    CHECK_THROWS_AS(oracle_min_max(m, 1), EnumerationCapExceeded);
    CHECK(oracle_enumeration_count(testing::two_state_model(1)) == 4);
    CHECK_THROWS_AS(oracle_history_value(testing::two_state_model(3)), EnumerationRefused);
    CHECK_THROWS_AS(oracle_history_value(testing::two_state_model(2), 2), EnumerationCapExceeded);
}
