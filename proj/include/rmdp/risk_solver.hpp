#pragma once

#include "rmdp/solver.hpp"

namespace rmdp {

/**
 * Backward induction J_n(x) = min_a rho_phi(c + J_{n+1}(T)) for models whose
 * stages all carry spectral ambiguity. The risk is evaluated on the payoff law
 * under the reference measure; witnesses are the comonotone densities.
 * Throws std::invalid_argument if any stage is not spectral.
 */
SolveResult solve_risk_form(const FiniteRobustMDP& model);

} // namespace rmdp
