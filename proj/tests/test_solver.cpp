#include "doctest.h"

#include "rmdp/game.hpp"
#include "rmdp/risk_solver.hpp"
#include "rmdp/solver.hpp"
#include "support/hand_models.hpp"
#include "support/random_instances.hpp"

#include <numeric>

using namespace rmdp;

namespace {

const std::vector<Density> kPair{Density{{2.0, 0.0}}, Density{{0.0, 2.0}}};

double max_abs_diff(const ValueTable& a, const ValueTable& b) {
    double d = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n)
        for (std::size_t s = 0; s < a[n].size(); ++s)
            d = std::max(d, std::abs(a[n][s] - b[n][s]));
    return d;
}

NaturePolicy constant_nature(const FiniteRobustMDP& m, std::size_t g) {
    NaturePolicy p(m.horizon);
    for (std::size_t n = 0; n < m.horizon; ++n) {
        p[n].assign(m.num_states(), std::vector<std::size_t>(m.stages[n].actions.size(), kUnset));
        for (std::size_t s = 0; s < m.num_states(); ++s)
            for (std::size_t a : m.stages[n].admissible[s])
                p[n][s][a] = g;
    }
    return p;
}

} // namespace

TEST_CASE("operator_L examples") {
    const auto zero = testing::zero_cost_model(1);
    const std::vector<double> none{0.0, 0.0};
    CHECK(operator_L(zero, 0, 1, 1, uniform_density(2), none) == 0.0);
    const std::vector<double> indicator{0.0, 1.0};
    CHECK(operator_L(zero, 0, 0, 0, uniform_density(2), indicator) == 0.5);
    // 0.5 * 0.5 * (1 + 3) + 0.5 * 1.5 * (2 + 5)
    const auto m = testing::two_state_model(1);
    const std::vector<double> v{3.0, 5.0};
    CHECK(operator_L(m, 0, 1, 1, Density{{0.5, 1.5}}, v) == doctest::Approx(6.25).epsilon(1e-15));
}

TEST_CASE("zero costs give zero values and the first admissible action") {
    const auto m = testing::zero_cost_model(2, kPair);
    const auto r = solve_robust(m);
    for (const auto& row : r.J)
        for (double v : row)
            CHECK(v == 0.0);
    for (const auto& row : r.controller)
        for (std::size_t a : row)
            CHECK(a == 0);
    for (const auto& row : solve_nature_first(m).J)
        for (double v : row)
            CHECK(v == 0.0);
}

TEST_CASE("hand model values") {
    // Singleton: J_0(x) = min_a a + (x + 1) / 2.
    const auto single = solve_robust(testing::two_state_model(1));
    CHECK(single.J[0] == std::vector<double>{0.5, 1.0});
    // Extreme densities (2, 0) and (0, 2): worst case a + x + 1.
    const auto pair = solve_robust(testing::two_state_model(1, kPair));
    CHECK(pair.J[0] == std::vector<double>{1.0, 2.0});
    CHECK(pair.nature[0][0][0] == 1);
}

TEST_CASE("counterexample: robust -1/4, nature-first -1/2, gap 1/4") {
    const auto ce = build_counterexample(0.01, 1.0);
    REQUIRE(ce.model.num_states() == 1);
    const auto r = solve_robust(ce.model);
    CHECK(r.J[0][0] == -0.25);
    CHECK(ce.model.stages[0].actions[r.controller[0][0]] == 0.5);
    const auto nf = solve_nature_first(ce.model);
    CHECK(nf.J[0][0] == -0.5);
    CHECK(gap(ce.model)[0][0] == 0.25);
}

TEST_CASE("nature-first mixtures are probability vectors over the family") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = testing::random_instance(rng, {3, 3, 3, 3, 2});
        const auto nf = solve_nature_first(m);
        for (std::size_t n = 0; n < m.horizon; ++n)
            for (std::size_t s = 0; s < m.num_states(); ++s) {
                const auto& w = nf.weights[n][s];
                REQUIRE(w.size() == nf.family[n][s].size());
                CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
                for (double x : w)
                    CHECK(x >= 0.0);
            }
    }
}

TEST_CASE("property: solve_robust equals an independent direct recursion") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        testing::RandomOptions opt;
        opt.masks = trial % 2 == 1;
        const auto m = testing::random_instance(rng, {4, 3, 3, 3, 3}, opt);
        const auto ref = testing::reference_robust_values(m);
        CHECK(max_abs_diff(solve_robust(m).J, ref) <= 1e-12);
    }
}

TEST_CASE("property: weak duality and evaluation consistency") {
    Rng rng(202);
    for (int trial = 0; trial < 150; ++trial) {
        const auto m = testing::random_instance(rng, {4, 3, 3, 3, 3});
        const auto r = solve_robust(m);
        for (const auto& row : gap(m))
            for (double g : row)
                CHECK(g >= -1e-12);
        CHECK(max_abs_diff(evaluate_pair(m, r.controller, r.nature), r.J) <= 1e-12);
        CHECK(max_abs_diff(evaluate_robust_policy(m, r.controller), r.J) <= 1e-12);
        // Any other controller is no better against the worst case.
        ControllerPolicy other = r.controller;
        for (std::size_t n = 0; n < m.horizon; ++n)
            for (std::size_t s = 0; s < m.num_states(); ++s) {
                const auto& adm = m.stages[n].admissible[s];
                other[n][s] = adm[rng.index(adm.size())];
            }
        const auto v = evaluate_robust_policy(m, other);
        for (std::size_t s = 0; s < m.num_states(); ++s)
            CHECK(v[0][s] >= r.J[0][s] - 1e-12);
    }
}

TEST_CASE("singleton ambiguity: gap zero and classical values") {
    Rng rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = testing::random_instance(rng, {4, 3, 3, 1, 3});
        std::vector<Density> per_stage;
        for (const auto& st : m.stages)
            per_stage.push_back(st.ambiguity.generators[0]);
        const auto r = solve_robust(m);
        CHECK(max_abs_diff(r.J, classical_values(m, per_stage)) <= 1e-12);
        for (const auto& row : gap(m))
            for (double g : row)
                CHECK(g == 0.0);
        ControllerPolicy c = r.controller;
        CHECK(max_abs_diff(evaluate_robust_policy(m, c), evaluate_pair(m, c, constant_nature(m, 0))) == 0.0);
    }
}

TEST_CASE("a dominated controller shows a strict gap") {
    const auto m = testing::two_state_model(1);
    const auto r = solve_robust(m);
    const ControllerPolicy always_one{{1, 1}};
    const auto v = evaluate_robust_policy(m, always_one);
    CHECK(v[0][0] == 1.5);
    CHECK(v[0][0] > r.J[0][0]);
}

TEST_CASE("evaluate_pair on a hand pair") {
    // Nature always charges z = 0: state 0 with a = 1 costs 1, state 1 with a = 0 costs 0.
    const auto m = testing::two_state_model(1, kPair);
    const auto v = evaluate_pair(m, {{1, 0}}, constant_nature(m, 0));
    CHECK(v[0] == std::vector<double>{1.0, 0.0});
    CHECK(evaluate_pair(testing::zero_cost_model(1, kPair), {{1, 0}}, constant_nature(m, 1))[0] ==
          std::vector<double>{0.0, 0.0});
}

TEST_CASE("malformed policies are rejected") {
    auto m = testing::two_state_model(1, kPair);
    m.stages[0].admissible[1] = {0};
    CHECK_THROWS_AS(evaluate_robust_policy(m, {{0, 1}}), PolicyError);
    CHECK_THROWS_AS(evaluate_robust_policy(m, {{0}}), PolicyError);
    CHECK_THROWS_AS(evaluate_pair(m, {{0, 0}}, constant_nature(m, 7)), PolicyError);
}

TEST_CASE("value monotonicity checks") {
    const ValueTable flat{{1.0, 1.0}, {2.0, 2.0}};
    CHECK(check_value_monotone(flat, Monotonicity::Increasing));
    CHECK(check_value_monotone(flat, Monotonicity::Decreasing));
    const ValueTable up{{0.0, 1.0}};
    CHECK(check_value_monotone(up, Monotonicity::Increasing));
    CHECK_FALSE(check_value_monotone(up, Monotonicity::Decreasing));
    Rng rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t maximal = 0;
        const auto m = testing::random_monotone_instance(rng, {4, 3, 3, 3, 3}, maximal);
        CHECK(check_value_monotone(solve_robust(m).J, Monotonicity::Increasing));
    }
}

TEST_CASE("risk form with phi = 1 is the classical recursion") {
    Rng rng(505);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = testing::random_instance(rng, {4, 3, 4, 1, 3});
        std::vector<Density> per_stage;
        for (auto& st : m.stages) {
            st.ambiguity = AmbiguitySet::from_spectrum(Spectrum::constant());
            per_stage.push_back(uniform_density(st.disturbance.size()));
        }
        CHECK(max_abs_diff(solve_risk_form(m).J, classical_values(m, per_stage)) <= 1e-12);
    }
}

TEST_CASE("property: risk form, spectral robust solve and ordering expansion agree") {
    Rng rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = testing::random_spectral_instance(rng, {4, 3, 4, 1, 1}, 6);
        const auto risk = solve_risk_form(m);
        const auto robust = solve_robust(m);
        // Direct minimum over actions of the spectral risk of the payoff law.
        const Stage& st = m.stages[0];
        for (std::size_t s = 0; s < m.num_states(); ++s) {
            double best = 1e300;
            for (std::size_t a : st.admissible[s]) {
                std::vector<double> f;
                for (double z : st.disturbance.support) {
                    const double raw = st.dynamics.transition(m.states[s], st.actions[a], z);
                    const std::size_t t = project_to_grid(m.states, raw);
                    f.push_back(st.dynamics.cost(m.states[s], st.actions[a], z, m.states[t]) + m.terminal_cost[t]);
                }
                best = std::min(best, spectral_rho(law_of_payoff(f, st.disturbance), st.ambiguity.spectrum));
            }
            CHECK(std::abs(risk.J[0][s] - best) <= 1e-12 * (1.0 + std::abs(best)));
        }
        auto expanded = m;
        expanded.stages[0].ambiguity =
            AmbiguitySet::from_generators(ordering_expansion(st.ambiguity.spectrum, st.disturbance));
        CHECK(max_abs_diff(risk.J, solve_robust(expanded).J) <= 1e-12);
        CHECK(max_abs_diff(risk.J, robust.J) <= 1e-12);
    }
}

TEST_CASE("risk form refuses generator stages") {
    CHECK_THROWS_AS(solve_risk_form(testing::two_state_model(1)), std::invalid_argument);
}

TEST_CASE("nature-first refuses states where the masks share no generator") {
    auto m = testing::two_state_model(1, kPair);
    m.generator_mask = GeneratorMask{{{{0}, {1}}, {{0, 1}, {0, 1}}}};
    CHECK_THROWS_AS(solve_nature_first(m), std::invalid_argument);
    m.generator_mask = GeneratorMask{{{{0, 1}, {1}}, {{0, 1}, {0, 1}}}};
    const auto nf = solve_nature_first(m);
    CHECK(nf.family[0][0] == std::vector<std::size_t>{1});
    CHECK(gap(m)[0][0] >= 0.0);
}
