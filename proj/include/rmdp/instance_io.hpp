#pragma once

#include "rmdp/bounds.hpp"
#include "rmdp/energy.hpp"
#include "rmdp/game.hpp"
#include "rmdp/lq.hpp"
#include "rmdp/solver.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rmdp {

using json = nlohmann::json;

/// Input does not match the instance schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Instance {
    FiniteRobustMDP model;
    std::optional<BoundingData> bounding;
    std::optional<ControllerPolicy> controller;
    std::optional<NaturePolicy> nature;
};

/**
 * Model instance from JSON. Either a full instance
 *   {"horizon", "states", "stages": [...], "terminal_cost", "generator_mask"?, "bounding"?, "policy"?}
 * or a packaged builtin {"builtin": "counterexample" | "energy", ...parameters}.
 * Per-stage "transition"/"cost" are dense [state][action][support] tables or
 * {"builtin": "lq" | "energy" | "counterexample", ...}.
 */
Instance parse_instance(const json& j);

LQParams parse_lq(const json& j);
EnergyParams parse_energy(const json& j);

struct CounterexampleParams {
    double step = 0.5;
    std::optional<double> nature_step;
    /// Action grid spacing of the uniform-mixing evaluation.
    double mix_step = 0.001;
};
CounterexampleParams parse_counterexample(const json& j);

/// FNV-1a 64-bit hash, rendered as 16 lowercase hex digits.
std::string digest(std::string_view bytes);

json values_json(const ValueTable& J);
json nature_entry(std::size_t index);
json to_json(const SolveResult& r);
json to_json(const NatureFirstResult& r);
json to_json(const LQSolution& sol);
json to_json(const LQTheta& t);

/// One row per (n, state): n,state,J,action,generator. Action and generator are
/// empty at the terminal stage; generator is -1 when nature's choice is not a
/// single listed generator (a mixture or a comonotone density).
std::string solve_csv(const FiniteRobustMDP& model, const SolveResult& r);
std::string nature_first_csv(const FiniteRobustMDP& model, const NatureFirstResult& r);
/// n,state,J with empty action and generator columns.
std::string values_csv(const FiniteRobustMDP& model, const ValueTable& J);
/// n,K,L,const,theta_star with theta as mu_u;sigma_u;mu_v;sigma_v;sigma_uv;w2.
std::string lq_csv(const LQSolution& sol);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

} // namespace rmdp
