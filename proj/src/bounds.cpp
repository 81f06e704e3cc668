#include "rmdp/bounds.hpp"

#include <cmath>
#include <sstream>

namespace rmdp {

namespace {

constexpr double kCheckTol = 1e-12;

bool leq(double a, double b) { return a <= b + kCheckTol * (1.0 + std::abs(b)); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string at(std::size_t n, std::size_t s, std::size_t a) {
    return "stage " + std::to_string(n) + ", state " + std::to_string(s) + ", action " + std::to_string(a);
}

// Largest q-norm over the ambiguity set: generators are checked one by one;
// for a spectral set the largest element in convex order is phi(U).
double set_norm(const AmbiguitySet& set, const FiniteDisturbance& ref, double q, std::size_t& worst) {
    if (set.is_spectral()) {
        worst = kComonotone;
        const Spectrum& phi = set.spectrum;
        if (std::isinf(q))
            return phi.values.back();
        double acc = 0.0;
        for (std::size_t j = 0; j < phi.values.size(); ++j)
            acc += std::pow(phi.values[j], q) * (phi.breakpoints[j + 1] - phi.breakpoints[j]);
        return std::pow(acc, 1.0 / q);
    }
    double best = -1.0;
    for (std::size_t g = 0; g < set.generators.size(); ++g) {
        const double v = density_norm(set.generators[g], ref, q);
        if (v > best) {
            best = v;
            worst = g;
        }
    }
    return best;
}

} // namespace

double density_norm(const Density& y, const FiniteDisturbance& ref, double q) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (ref.probs[i] > 0.0)
                m = std::max(m, y.weights[i]);
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        acc += ref.probs[i] * std::pow(y.weights[i], q);
    return std::pow(acc, 1.0 / q);
}

BoundingCheck check_bounding(const FiniteRobustMDP& model, const BoundingData& data) {
    require_valid(model);
    BoundingCheck out;
    auto& v = out.violations;
    const std::size_t S = model.num_states();
    if (data.lower.size() != S || data.upper.size() != S) {
        v.emplace_back("bounding functions do not cover the state grid");
        return out;
    }
    if (!(data.alpha >= 0.0) || data.alpha == 1.0)
        v.emplace_back("alpha must be nonnegative and different from 1");
    if (!(data.norm_bound >= 1.0))
        v.emplace_back("norm bound must be at least 1");
    if (!(data.q > 1.0))
        v.emplace_back("norm exponent q must exceed 1");
    if (std::abs(data.eps_lower + data.eps_upper - 1.0) > kCheckTol || data.eps_lower < 0.0 || data.eps_upper < 0.0)
        v.emplace_back("declared epsilons must be nonnegative and sum to 1");
    for (std::size_t s = 0; s < S; ++s) {
        if (!leq(data.lower[s], -data.eps_lower))
            v.push_back("lower bound at state " + std::to_string(s) + " exceeds -eps_lower");
        if (!leq(data.eps_upper, data.upper[s]))
            v.push_back("upper bound at state " + std::to_string(s) + " is below eps_upper");
        if (!leq(data.lower[s], model.terminal_cost[s]) || !leq(model.terminal_cost[s], data.upper[s]))
            v.push_back("terminal cost at state " + std::to_string(s) + " leaves [lower, upper]");
    }

    for (std::size_t n = 0; n < model.horizon; ++n) {
        const Stage& st = model.stages[n];
        const StageTable table = compile_stage(model, n);
        const std::size_t m = st.disturbance.size();
        for (std::size_t s = 0; s < S; ++s)
            for (std::size_t a : st.admissible[s]) {
                const auto allowed = model.allowed_generators(n, s, a);
                const std::size_t base = table.offset(s, a);
                std::vector<double> neg_part(m), pos_part(m), lower_next(m), upper_next(m);
                for (std::size_t i = 0; i < m; ++i) {
                    const double c = table.cost[base + i];
                    // -(c^-) = min(c, 0) enters through its infimum, so store its negation.
                    neg_part[i] = -std::min(c, 0.0);
                    pos_part[i] = std::max(c, 0.0);
                    lower_next[i] = -data.lower[table.next[base + i]];
                    upper_next[i] = data.upper[table.next[base + i]];
                }
                const double inf_neg = -sup_over_set(st.ambiguity, neg_part, st.disturbance, allowed).value;
                const double inf_lower = -sup_over_set(st.ambiguity, lower_next, st.disturbance, allowed).value;
                const double sup_pos = sup_over_set(st.ambiguity, pos_part, st.disturbance, allowed).value;
                const double sup_upper = sup_over_set(st.ambiguity, upper_next, st.disturbance, allowed).value;
                if (!leq(data.lower[s], inf_neg))
                    v.push_back(at(n, s, a) + ": worst expected negative cost part " + fmt(inf_neg) +
                                " is below the lower bound " + fmt(data.lower[s]));
                if (!leq(data.alpha * data.lower[s], inf_lower))
                    v.push_back(at(n, s, a) + ": expected lower bound at the next state " + fmt(inf_lower) +
                                " is below alpha * lower");
                if (!leq(sup_pos, data.upper[s]))
                    v.push_back(at(n, s, a) + ": worst expected positive cost part " + fmt(sup_pos) +
                                " exceeds the upper bound " + fmt(data.upper[s]));
                if (!leq(sup_upper, data.alpha * data.upper[s]))
                    v.push_back(at(n, s, a) + ": expected upper bound at the next state " + fmt(sup_upper) +
                                " exceeds alpha * upper");
            }
        std::size_t worst = 0;
        const double norm = set_norm(st.ambiguity, st.disturbance, data.q, worst);
        if (!leq(norm, data.norm_bound))
            v.push_back("stage " + std::to_string(n) + ": ambiguity set has norm " + fmt(norm) +
                        " above the bound " + fmt(data.norm_bound) +
                        (worst == kComonotone ? std::string(" (spectrum)")
                                              : " (generator " + std::to_string(worst) + ")"));
    }
    return out;
}

double envelope_factor(double alpha, std::size_t horizon, std::size_t n) {
    if (alpha == 1.0)
        return static_cast<double>(horizon + 1 - n);
    return (1.0 - std::pow(alpha, static_cast<double>(horizon + 1 - n))) / (1.0 - alpha);
}

bool check_envelope(const FiniteRobustMDP& model, const BoundingData& data, const ValueTable& values) {
    if (values.size() != model.horizon + 1)
        return false;
    for (std::size_t n = 0; n <= model.horizon; ++n) {
        const double f = envelope_factor(data.alpha, model.horizon, n);
        if (values[n].size() != model.num_states())
            return false;
        for (std::size_t s = 0; s < model.num_states(); ++s) {
            if (values[n][s] < f * data.lower[s] - kEnvelopeTol)
                return false;
            if (values[n][s] > f * data.upper[s] + kEnvelopeTol)
                return false;
        }
    }
    return true;
}

} // namespace rmdp
