#include "doctest.h"

#include "rmdp/bounds.hpp"
#include "support/hand_models.hpp"
#include "support/random_instances.hpp"

#include <algorithm>

using namespace rmdp;

namespace {

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

} // namespace

TEST_CASE("envelope factor") {
    CHECK(envelope_factor(0.0, 3, 3) == 1.0);
    CHECK(envelope_factor(0.5, 2, 0) == doctest::Approx(1.75));
    CHECK(envelope_factor(1.0, 2, 0) == doctest::Approx(3.0));
}

TEST_CASE("density norms") {
    const FiniteDisturbance ref{{0.0, 1.0}, {0.5, 0.5}};
    const Density y{{0.5, 1.5}};
    CHECK(density_norm(y, ref, std::numeric_limits<double>::infinity()) == 1.5);
    CHECK(density_norm(y, ref, 1.0) == doctest::Approx(1.0));
    CHECK(density_norm(y, ref, 2.0) == doctest::Approx(std::sqrt(0.5 * 0.25 + 0.5 * 2.25)));
}

TEST_CASE("constant bounds on a bounded-cost model pass") {
    // 0 <= c <= 2 and 0 <= c_N <= 1; constant bounds -/+ 2 need alpha >= 1.
    const auto m = testing::two_state_model(2);
    BoundingData d;
    d.lower = {-2.0, -2.0};
    d.upper = {2.0, 2.0};
    d.alpha = 1.5;
    d.norm_bound = 1.0;
    CHECK(check_bounding(m, d).ok());
    CHECK(check_envelope(m, d, solve_robust(m).J));
}

TEST_CASE("a cost above the upper bound is named") {
    const auto m = testing::two_state_model(1);
    BoundingData d;
    d.lower = {-0.5, -0.5};
    d.upper = {1.0, 1.0};
    d.alpha = 0.2;
    const auto v = check_bounding(m, d).violations;
    CHECK(mentions(v, "stage 0, state 1, action 1"));
}

TEST_CASE("a generator above the declared norm is a violation") {
    auto m = testing::two_state_model(1);
    m.stages[0].disturbance.probs = {0.25, 0.75};
    m.stages[0].ambiguity = AmbiguitySet::from_generators({Density{{3.0, 1.0 / 3.0}}});
    BoundingData d;
    d.lower = {-10.0, -10.0};
    d.upper = {10.0, 10.0};
    d.alpha = 1.5;
    d.norm_bound = 2.0;
    CHECK(mentions(check_bounding(m, d).violations, "norm"));
}

TEST_CASE("zero costs sit inside the half envelope") {
    const auto m = testing::zero_cost_model(2);
    BoundingData d;
    d.lower = {-0.5, -0.5};
    d.upper = {0.5, 0.5};
    d.alpha = 0.0;
    CHECK(check_envelope(m, d, solve_robust(m).J));
}

TEST_CASE("a shrunken upper bound fails both checks") {
    const auto m = testing::two_state_model(2);
    BoundingData d;
    d.lower = {-0.5, -0.5};
    d.upper = {0.5, 0.5};
    d.alpha = 0.0;
    CHECK_FALSE(check_bounding(m, d).ok());
    CHECK_FALSE(check_envelope(m, d, solve_robust(m).J));
}

TEST_CASE("property: envelopes hold for random bounded instances and random policy pairs") {
    Rng rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        BoundingData d;
        const auto m = testing::random_bounded_instance(rng, {4, 3, 3, 3, 3}, d);
        REQUIRE(check_bounding(m, d).ok());
        CHECK(check_envelope(m, d, solve_robust(m).J));
        for (int k = 0; k < 5; ++k) {
            ControllerPolicy c(m.horizon);
            NaturePolicy g(m.horizon);
            for (std::size_t n = 0; n < m.horizon; ++n) {
                const Stage& st = m.stages[n];
                c[n].resize(m.num_states());
                g[n].assign(m.num_states(), std::vector<std::size_t>(st.actions.size(), kUnset));
                for (std::size_t s = 0; s < m.num_states(); ++s) {
                    c[n][s] = st.admissible[s][rng.index(st.admissible[s].size())];
                    for (std::size_t a : st.admissible[s])
                        g[n][s][a] = rng.index(st.ambiguity.generators.size());
                }
            }
            CHECK(check_envelope(m, d, evaluate_pair(m, c, g)));
        }
    }
}
