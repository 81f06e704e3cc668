#include "doctest.h"

#include "rmdp/model.hpp"
#include "support/hand_models.hpp"
#include "support/random_instances.hpp"

#include <algorithm>

using namespace rmdp;

namespace {

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

} // namespace

TEST_CASE("a well-formed model has no violations") {
    CHECK(validate(testing::two_state_model(1)).empty());
    CHECK_NOTHROW(require_valid(testing::two_state_model(2)));
}

TEST_CASE("an empty admissible set is named by stage and state") {
    auto m = testing::two_state_model(1);
    m.stages[0].admissible[1].clear();
    const auto v = validate(m);
    REQUIRE(v.size() == 1);
    CHECK(mentions(v, "stage 0, state 1"));
    CHECK_THROWS_AS(require_valid(m), ValidationError);
}

TEST_CASE("reference probabilities not summing to one give one violation") {
    auto m = testing::two_state_model(1);
    m.stages[0].disturbance.probs = {0.5, 0.4};
    const auto v = validate(m);
    CHECK(mentions(v, "stage 0"));
    CHECK(std::count_if(v.begin(), v.end(), [](const std::string& s) { return s.find("prob") != std::string::npos; }) == 1);
}

TEST_CASE("structural violations are reported") {
    auto m = testing::two_state_model(2);
    m.stages.pop_back();
    CHECK_FALSE(validate(m).empty());

    auto unsorted = testing::two_state_model(1);
    unsorted.states = {1.0, 0.0};
    CHECK_FALSE(validate(unsorted).empty());

    auto range = testing::two_state_model(1);
    range.stages[0].admissible[0] = {0, 5};
    CHECK(mentions(validate(range), "out of range"));

    auto mask = testing::two_state_model(1);
    mask.generator_mask = GeneratorMask{{{{0}, {}}, {{0}, {0}}}};
    CHECK(mentions(validate(mask), "masked generator set is empty"));
}

TEST_CASE("project_to_grid examples") {
    const std::vector<double> g{0.0, 1.0, 2.0};
    CHECK(project_to_grid(g, 1.0) == 1);
    CHECK(project_to_grid(g, 0.5) == 0);
    CHECK(project_to_grid(g, 1.5) == 1);
    CHECK(project_to_grid(g, 7.3) == 2);
    CHECK(project_to_grid(g, -4.0) == 0);
    CHECK(project_to_grid(g, 1.6) == 2);
}

TEST_CASE("property: projection matches a linear scan with lower-index ties") {
    Rng rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = testing::random_grid(rng, testing::draw_between(rng, 1, 8));
        const double x = std::round(rng.uniform(-2.0, g.back() + 2.0) * 4.0) / 4.0;
        std::size_t best = 0;
        for (std::size_t i = 1; i < g.size(); ++i)
            if (std::abs(g[i] - x) < std::abs(g[best] - x))
                best = i;
        CHECK(project_to_grid(g, x) == best);
    }
}

TEST_CASE("induced distribution examples") {
    auto m = testing::two_state_model(1);
    const auto id = induced_distribution(m, 0, 0, 0, uniform_density(2));
    REQUIRE(id.size() == 2);
    CHECK(id.atoms()[0] == Atom{0.0, 0.5});
    CHECK(id.atoms()[1] == Atom{1.0, 0.5});

    m.stages[0].dynamics.transition = [](double, double, double) { return 1.0; };
    const auto c = induced_distribution(m, 0, 0, 0, Density{{2.0, 0.0}});
    REQUIRE(c.size() == 1);
    CHECK(c.atoms()[0] == Atom{1.0, 1.0});

    // x = 1, a = 1, support {0, 2}, density (2, 0): the only charged outcome is z = 0, x' = 0.
    auto shift = testing::two_state_model(1);
    shift.states = {0.0, 1.0, 2.0};
    shift.terminal_cost = {0.0, 0.0, 0.0};
    shift.stages[0].admissible = {{0, 1}, {0, 1}, {0, 1}};
    shift.stages[0].disturbance = {{0.0, 2.0}, {0.5, 0.5}};
    shift.stages[0].dynamics.transition = [](double x, double a, double z) { return x + z - a; };
    const auto d = induced_distribution(shift, 0, 1, 1, Density{{2.0, 0.0}});
    REQUIRE(d.size() == 1);
    CHECK(d.atoms()[0] == Atom{0.0, 1.0});
}

TEST_CASE("compile_stage caches next states and costs") {
    const auto m = testing::two_state_model(1);
    const auto t = compile_stage(m, 0);
    CHECK(t.next[t.offset(1, 1) + 1] == 1);
    CHECK(t.cost[t.offset(1, 1) + 1] == 2.0);
    const std::vector<double> v{0.0, 10.0};
    CHECK(stage_payoff(t, 1, 0, v) == std::vector<double>{0.0, 11.0});
}

TEST_CASE("flag contradictions are detected") {
    auto m = testing::two_state_model(1);
    m.stages[0].dynamics.transition = [](double x, double, double) { return 1.0 - x; };
    m.stages[0].dynamics.monotone.transition_increasing = true;
    CHECK(mentions(flag_contradictions(m, 20, 1), "transition decreases"));

    auto ok = testing::two_state_model(1);
    ok.stages[0].dynamics.monotone = {true, true, true, true};
    CHECK(flag_contradictions(ok, 20, 1).empty());
}
