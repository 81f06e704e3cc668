#include "rmdp/cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
    rmdp::RunConfig cfg;
    CLI::App app{"Robust finite-horizon MDP solver"};
    app.require_subcommand(1);
    double tol = 0.0;
    CLI::Option* tol_opt = nullptr;
    const std::map<std::string, std::string> help{
        {"validate", "List every violated model invariant"},
        {"solve", "Robust backward induction (controller moves first)"},
        {"solve-nature-first", "Sup-inf values with nature moving first"},
        {"evaluate", "Values of the policy stored in the instance"},
        {"oracle", "Brute-force min-max over Markov policies"},
        {"gap", "Robust minus nature-first values"},
        {"bounds", "Check bounding functions and value envelopes"},
        {"risk", "Spectral risk-form recursion"},
        {"counterexample", "Static game with a duality gap"},
        {"lq", "Robust LQ closed form and stagewise check"},
        {"energy", "Energy storage bidding model"},
    };
    for (const auto& name : rmdp::commands()) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--input,-i", cfg.input, "Instance JSON file");
        sub->add_option("--output,-o", cfg.output, "Report file (default: stdout)");
        sub->add_option("--format,-f", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", cfg.seed, "Seed for sampled flag checks");
        sub->add_option("--cap", cfg.cap, "Enumeration cap for the oracle");
        auto* t = sub->add_option("--tol", tol, "Reporting tolerance");
        sub->callback([&cfg, &tol_opt, t, name] {
            cfg.command = name;
            tol_opt = t;
        });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << nlohmann::json{{"error", "usage"}, {"exit", rmdp::kExitSchema}, {"message", e.what()}}.dump()
                  << '\n';
        return rmdp::kExitSchema;
    }
    if (tol_opt && tol_opt->count() > 0)
        cfg.tol = tol;
    return rmdp::run(cfg, std::cout, std::cerr);
}
