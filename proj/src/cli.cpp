#include "rmdp/cli.hpp"

#include "rmdp/bounds.hpp"
#include "rmdp/energy.hpp"
#include "rmdp/game.hpp"
#include "rmdp/instance_io.hpp"
#include "rmdp/lq.hpp"
#include "rmdp/oracle.hpp"
#include "rmdp/risk_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace rmdp {

namespace {

constexpr double kDefaultReportTol = 1e-12;

struct Failure {
    int code;
    std::string kind;
    std::string message;
    std::vector<std::string> violations;
};

struct Report {
    json body;
    std::optional<std::string> csv;
};

struct Context {
    const RunConfig& cfg;
    std::string bytes;
    std::string digest;
    double tol;
};

json tolerances(double report_tol) {
    return {{"probability", kProbTol}, {"tie", kTieTol},         {"order", kOrderTol},
            {"convex_mean", kConvexMeanTol}, {"envelope", kEnvelopeTol}, {"report", report_tol}};
}

json parse_json(const std::string& bytes) {
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw Failure{kExitSchema, "schema", std::string("input is not valid JSON: ") + e.what(), {}};
    }
}

Instance load_model(const Context& ctx, bool require_validity = true) {
    Instance inst;
    try {
        inst = parse_instance(parse_json(ctx.bytes));
    } catch (const SchemaError& e) {
        throw Failure{kExitSchema, "schema", e.what(), {}};
    }
    if (require_validity) {
        auto v = validate(inst.model);
        if (!v.empty())
            throw Failure{kExitValidation, "validation", "instance violates model invariants", std::move(v)};
    }
    return inst;
}

void require_csv_ok(const Context& ctx, bool supported) {
    if (ctx.cfg.format == "csv" && !supported)
        throw Failure{kExitSchema, "format", "csv output is not available for " + ctx.cfg.command, {}};
}

Report cmd_validate(const Context& ctx) {
    require_csv_ok(ctx, false);
    const Instance inst = load_model(ctx, false);
    const auto violations = validate(inst.model);
    json body{{"violations", violations}};
    if (!violations.empty())
        throw Failure{kExitValidation, "validation", "instance violates model invariants", violations};
    body["flag_contradictions"] = flag_contradictions(inst.model, 64, ctx.cfg.seed);
    return {body, {}};
}

Report cmd_solve(const Context& ctx) {
    const Instance inst = load_model(ctx);
    const SolveResult r = solve_robust(inst.model);
    return {to_json(r), solve_csv(inst.model, r)};
}

Report cmd_nature_first(const Context& ctx) {
    const Instance inst = load_model(ctx);
    const NatureFirstResult r = solve_nature_first(inst.model);
    return {to_json(r), nature_first_csv(inst.model, r)};
}

Report cmd_evaluate(const Context& ctx) {
    const Instance inst = load_model(ctx);
    if (!inst.controller)
        throw Failure{kExitSchema, "schema", "evaluate needs policy.controller in the instance", {}};
    try {
        const ValueTable J = inst.nature ? evaluate_pair(inst.model, *inst.controller, *inst.nature)
                                         : evaluate_robust_policy(inst.model, *inst.controller);
        return {json{{"J", values_json(J)}, {"nature", inst.nature ? "fixed" : "worst-case"}},
                values_csv(inst.model, J)};
    } catch (const PolicyError& e) {
        throw Failure{kExitValidation, "validation", e.what(), {e.what()}};
    }
}

Report cmd_oracle(const Context& ctx) {
    require_csv_ok(ctx, false);
    const Instance inst = load_model(ctx);
    try {
        const OracleResult r = oracle_min_max(inst.model, ctx.cfg.cap);
        json natures = json::array();
        for (const auto& pol : r.natures) {
            json p = json::array();
            for (const auto& stage : pol) {
                json st = json::array();
                for (const auto& row : stage) {
                    json rr = json::array();
                    for (std::size_t g : row)
                        rr.push_back(nature_entry(g));
                    st.push_back(std::move(rr));
                }
                p.push_back(std::move(st));
            }
            natures.push_back(std::move(p));
        }
        json body{{"values", r.values},
                  {"controllers", r.controllers},
                  {"natures", natures},
                  {"evaluations", r.evaluations},
                  {"cap", ctx.cfg.cap}};
        if (inst.model.horizon <= 2 && history_enumeration_count(inst.model) <= ctx.cfg.cap)
            body["history_values"] = oracle_history_value(inst.model, ctx.cfg.cap);
        return {body, {}};
    } catch (const EnumerationRefused& e) {
        throw Failure{kExitRefused, "refused", e.what(), {}};
    }
}

Report cmd_gap(const Context& ctx) {
    const Instance inst = load_model(ctx);
    const SolveResult upper = solve_robust(inst.model);
    const NatureFirstResult lower = solve_nature_first(inst.model);
    ValueTable g = upper.J;
    double lo = 0.0, hi = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n)
        for (std::size_t s = 0; s < g[n].size(); ++s) {
            g[n][s] -= lower.J[n][s];
            lo = std::min(lo, g[n][s]);
            hi = std::max(hi, g[n][s]);
        }
    json body{{"upper", values_json(upper.J)},
              {"lower", values_json(lower.J)},
              {"gap", values_json(g)},
              {"min_gap", lo},
              {"max_gap", hi},
              {"weak_duality", lo >= -ctx.tol}};
    return {body, values_csv(inst.model, g)};
}

Report cmd_bounds(const Context& ctx) {
    require_csv_ok(ctx, false);
    const Instance inst = load_model(ctx);
    if (!inst.bounding)
        throw Failure{kExitSchema, "schema", "bounds needs a \"bounding\" block in the instance", {}};
    const BoundingData& b = *inst.bounding;
    const BoundingCheck check = check_bounding(inst.model, b);
    json body{{"violations", check.violations}, {"local_domination", check.local_domination}};
    std::vector<double> factors;
    try {
        for (std::size_t n = 0; n <= inst.model.horizon; ++n)
            factors.push_back(envelope_factor(b.alpha, inst.model.horizon, n));
        body["envelope_factor"] = factors;
        body["envelope_holds"] = check_envelope(inst.model, b, solve_robust(inst.model).J);
    } catch (const std::invalid_argument& e) {
        body["envelope_error"] = e.what();
    }
    return {body, {}};
}

Report cmd_risk(const Context& ctx) {
    const Instance inst = load_model(ctx);
    const SolveResult r = solve_risk_form(inst.model);
    return {to_json(r), solve_csv(inst.model, r)};
}

Report cmd_counterexample(const Context& ctx) {
    require_csv_ok(ctx, false);
    CounterexampleParams p;
    try {
        p = parse_counterexample(ctx.bytes.empty() ? json() : parse_json(ctx.bytes));
    } catch (const SchemaError& e) {
        throw Failure{kExitSchema, "schema", e.what(), {}};
    }
    Counterexample ce;
    StaticGame mix_game;
    try {
        ce = build_counterexample(p.step, p.nature_step);
        mix_game = StaticGame::tabulate(unit_grid(p.mix_step), ce.game.params,
                                        [](double a, double q) { return -a * a + q * (2.0 * a - 1.0); });
    } catch (const std::invalid_argument& e) {
        throw Failure{kExitSchema, "schema", e.what(), {}};
    }
    const GameValue up = upper_value(ce.game);
    const GameValue low = lower_value(ce.game);
    const std::vector<double> uniform(mix_game.actions.size(), 1.0 / static_cast<double>(mix_game.actions.size()));
    const auto saddle = saddle_search(ce.game, ctx.tol);
    json body{{"upper", up.value},
              {"lower", low.value},
              {"gap", up.value - low.value},
              {"saddle", saddle ? json{{"action", ce.game.actions[saddle->action]},
                                       {"param", ce.game.params[saddle->param]}}
                                : json(nullptr)},
              {"witnesses", {{"upper_action", ce.game.actions[up.index]}, {"lower_param", ce.game.params[low.index]}}},
              {"uniform_mixing", mixing_value(mix_game, uniform)},
              {"mdp", {{"J0_robust", solve_robust(ce.model).J[0]}, {"J0_nature_first", solve_nature_first(ce.model).J[0]}}}};
    return {body, {}};
}

Report cmd_lq(const Context& ctx) {
    LQParams p;
    json j;
    try {
        j = parse_json(ctx.bytes);
        p = parse_lq(j);
    } catch (const SchemaError& e) {
        throw Failure{kExitSchema, "schema", e.what(), {}};
    }
    LQSolution sol;
    try {
        sol = lq_solve_closed_form(p);
    } catch (const std::invalid_argument& e) {
        throw Failure{kExitValidation, "validation", e.what(), {e.what()}};
    }
    std::vector<double> states{-1.0, -0.5, 0.0, 0.5, 1.0};
    double reach = 1.0;
    for (double L : sol.L)
        reach = std::max(reach, 2.0 * std::abs(L));
    std::size_t points = 2001;
    try {
        if (const auto it = j.find("sample_states"); it != j.end())
            states = it->get<std::vector<double>>();
        if (const auto it = j.find("action_points"); it != j.end())
            points = it->get<std::size_t>();
    } catch (const json::exception& e) {
        throw Failure{kExitSchema, "schema", e.what(), {}};
    }
    const auto actions = linspace(-reach, reach, std::max<std::size_t>(points, 2));
    const LQVerification v = lq_verify_stagewise(p, sol, states, actions);
    json body = to_json(sol);
    body["verification"] = {{"sample_states", states},
                            {"action_grid", {{"lo", -reach}, {"hi", reach}, {"points", actions.size()}}},
                            {"deviation", v.deviation},
                            {"interchange", v.interchange}};
    return {body, lq_csv(sol)};
}

Report cmd_energy(const Context& ctx) {
    EnergyParams p;
    FiniteRobustMDP model;
    try {
        p = parse_energy(parse_json(ctx.bytes));
        model = energy_build(p);
    } catch (const SchemaError& e) {
        throw Failure{kExitSchema, "schema", e.what(), {}};
    } catch (const std::invalid_argument& e) {
        throw Failure{kExitSchema, "schema", e.what(), {}};
    }
    const SolveResult r = solve_robust(model);
    json body = to_json(r);
    body["states"] = model.states;
    body["actions"] = model.stages.front().actions;
    body["decreasing"] = check_value_monotone(r.J, Monotonicity::Decreasing);
    try {
        const StReduction red = energy_st_reduction_check(model);
        body["st_reduction"] = {{"minimal", red.minimal},
                                {"max_difference", red.max_difference},
                                {"equal", red.max_difference <= 1e-12}};
    } catch (const std::invalid_argument& e) {
        body["st_reduction"] = {{"error", e.what()}};
    }
    return {body, solve_csv(model, r)};
}

using Handler = Report (*)(const Context&);

Handler handler_for(const std::string& command) {
    if (command == "validate") return cmd_validate;
    if (command == "solve") return cmd_solve;
    if (command == "solve-nature-first") return cmd_nature_first;
    if (command == "evaluate") return cmd_evaluate;
    if (command == "oracle") return cmd_oracle;
    if (command == "gap") return cmd_gap;
    if (command == "bounds") return cmd_bounds;
    if (command == "risk") return cmd_risk;
    if (command == "counterexample") return cmd_counterexample;
    if (command == "lq") return cmd_lq;
    if (command == "energy") return cmd_energy;
    return nullptr;
}

void emit_error(std::ostream& err, const Failure& f) {
    json e{{"error", f.kind}, {"message", f.message}, {"exit", f.code}};
    if (!f.violations.empty())
        e["violations"] = f.violations;
    err << e.dump() << '\n';
}

std::string render(const Context& ctx, const Report& r) {
    if (ctx.cfg.format == "csv") {
        std::ostringstream os;
        os << "# command=" << ctx.cfg.command << " digest=" << ctx.digest << " tolerances="
           << tolerances(ctx.tol).dump() << '\n'
           << *r.csv;
        return os.str();
    }
    json full{{"command", ctx.cfg.command},
              {"digest", ctx.digest},
              {"seed", ctx.cfg.seed},
              {"tolerances", tolerances(ctx.tol)},
              {"result", r.body}};
    return full.dump(2) + "\n";
}

void write_report(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!(f << text))
        throw Failure{kExitFailure, "io", "cannot write " + cfg.output, {}};
}

} // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"validate", "solve",  "solve-nature-first", "evaluate",
                                                "oracle",   "gap",    "bounds",             "risk",
                                                "counterexample", "lq", "energy"};
    return names;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string dig = digest("");
    try {
        const Handler h = handler_for(cfg.command);
        if (!h)
            throw Failure{kExitSchema, "usage", "unknown command \"" + cfg.command + "\"", {}};
        if (cfg.format != "json" && cfg.format != "csv")
            throw Failure{kExitSchema, "usage", "format must be json or csv", {}};
        if (cfg.tol && !(*cfg.tol >= 0.0))
            throw Failure{kExitSchema, "usage", "tolerance must be nonnegative", {}};
        Context ctx{cfg, {}, {}, cfg.tol.value_or(kDefaultReportTol)};
        if (!cfg.input.empty()) {
            std::ifstream f(cfg.input, std::ios::binary);
            if (!f)
                throw Failure{kExitSchema, "io", "cannot read " + cfg.input, {}};
            ctx.bytes.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
        } else if (cfg.command != "counterexample") {
            throw Failure{kExitSchema, "usage", cfg.command + " needs --input", {}};
        }
        ctx.digest = dig = digest(ctx.bytes);
        const Report r = h(ctx);
        write_report(cfg, render(ctx, r), out);
        return kExitOk;
    } catch (const Failure& f) {
        if (f.code == kExitValidation && cfg.command == "validate" && cfg.format == "json") {
            // The violation list is the report of a failed validate.
            try {
                write_report(cfg, json{{"command", cfg.command}, {"digest", dig}, {"seed", cfg.seed},
                                  {"tolerances", tolerances(cfg.tol.value_or(kDefaultReportTol))},
                                  {"result", {{"violations", f.violations}}}}.dump(2) + "\n",
                             out);
            } catch (const Failure&) {
            }
        }
        emit_error(err, f);
        return f.code;
    } catch (const ValidationError& e) {
        emit_error(err, {kExitValidation, "validation", e.what(), e.violations()});
        return kExitValidation;
    } catch (const std::exception& e) {
        emit_error(err, {kExitFailure, "error", e.what(), {}});
        return kExitFailure;
    }
}

} // namespace rmdp
