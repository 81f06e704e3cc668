#include "rmdp/risk_solver.hpp"

#include "rmdp/parallel.hpp"

#include <string>

namespace rmdp {

SolveResult solve_risk_form(const FiniteRobustMDP& model) {
    require_valid(model);
    for (std::size_t n = 0; n < model.horizon; ++n)
        if (!model.stages[n].ambiguity.is_spectral())
            throw std::invalid_argument("solve_risk_form: stage " + std::to_string(n) + " is not spectral");
    const std::size_t N = model.horizon, S = model.num_states();
    SolveResult r;
    r.J.assign(N + 1, std::vector<double>(S, 0.0));
    r.J[N] = model.terminal_cost;
    r.controller.assign(N, std::vector<std::size_t>(S, 0));
    r.nature.resize(N);
    r.witness.assign(N, std::vector<Density>(S));
    for (std::size_t step = 0; step < N; ++step) {
        const std::size_t n = N - 1 - step;
        const Stage& st = model.stages[n];
        const StageTable table = compile_stage(model, n);
        r.nature[n].assign(S, std::vector<std::size_t>(st.actions.size(), kUnset));
        parallel_for(S, [&](std::size_t s) {
            bool first = true;
            double best = 0.0;
            for (std::size_t a : st.admissible[s]) {
                const auto payoff = stage_payoff(table, s, a, r.J[n + 1]);
                const double rho = spectral_rho(law_of_payoff(payoff, st.disturbance), st.ambiguity.spectrum);
                r.nature[n][s][a] = kComonotone;
                if (first || rho < best - kTieTol) {
                    first = false;
                    best = rho;
                    r.controller[n][s] = a;
                    r.witness[n][s] = comonotone_density(payoff, st.disturbance, st.ambiguity.spectrum);
                }
            }
            r.J[n][s] = best;
        });
    }
    return r;
}

} // namespace rmdp
