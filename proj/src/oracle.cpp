#include "rmdp/oracle.hpp"

#include "rmdp/parallel.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>

namespace rmdp {

EnumerationCapExceeded::EnumerationCapExceeded(std::uint64_t count, std::uint64_t cap)
    : EnumerationRefused("enumeration of " +
                         (count == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                             : std::to_string(count)) +
                         " policy pairs exceeds the cap of " + std::to_string(cap)),
      count_(count), cap_(cap) {}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a)
        return kSaturated;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return b > kSaturated - a ? kSaturated : a + b; }

// p_i * y_i for every nature candidate at every admissible (n, s, a), plus the stage tables.
struct Enumerable {
    std::size_t N = 0, S = 0;
    std::vector<StageTable> tables;
    std::vector<std::vector<std::vector<std::vector<std::vector<double>>>>> weights; // [n][s][a][k][i]

    explicit Enumerable(const FiniteRobustMDP& model) : N(model.horizon), S(model.num_states()) {
        weights.resize(N);
        for (std::size_t n = 0; n < N; ++n) {
            const Stage& st = model.stages[n];
            tables.push_back(compile_stage(model, n));
            weights[n].assign(S, std::vector<std::vector<std::vector<double>>>(st.actions.size()));
            for (std::size_t s = 0; s < S; ++s)
                for (std::size_t a : st.admissible[s])
                    for (const auto& y : nature_candidates(model, n, s, a)) {
                        std::vector<double> w(y.size());
                        for (std::size_t i = 0; i < y.size(); ++i)
                            w[i] = st.disturbance.probs[i] * y.weights[i];
                        weights[n][s][a].push_back(std::move(w));
                    }
        }
    }

    std::size_t candidates(std::size_t n, std::size_t s, std::size_t a) const { return weights[n][s][a].size(); }

    double step(std::size_t n, std::size_t s, std::size_t a, std::size_t k, const std::vector<double>& next) const {
        const auto& t = tables[n];
        const auto& w = weights[n][s][a][k];
        const std::size_t base = t.offset(s, a);
        double acc = 0.0;
        for (std::size_t i = 0; i < t.support; ++i)
            acc += w[i] * (t.cost[base + i] + next[t.next[base + i]]);
        return acc;
    }
};

} // namespace

std::uint64_t oracle_enumeration_count(const FiniteRobustMDP& model) {
    require_valid(model);
    std::uint64_t total = 1;
    for (std::size_t n = 0; n < model.horizon; ++n)
        for (std::size_t s = 0; s < model.num_states(); ++s) {
            std::uint64_t per_state = 0;
            for (std::size_t a : model.stages[n].admissible[s])
                per_state = sat_add(per_state, nature_candidates(model, n, s, a).size());
            total = sat_mul(total, per_state);
        }
    return total;
}

OracleResult oracle_min_max(const FiniteRobustMDP& model, std::uint64_t cap) {
    const std::uint64_t count = oracle_enumeration_count(model);
    if (count > cap)
        throw EnumerationCapExceeded(count, cap);
    const Enumerable e(model);
    const std::size_t N = e.N, S = e.S, slots = N * S;

    std::vector<std::size_t> radix(slots);
    std::uint64_t controllers = 1;
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t s = 0; s < S; ++s) {
            radix[n * S + s] = model.stages[n].admissible[s].size();
            controllers *= radix[n * S + s];
        }

    auto decode_controller = [&](std::uint64_t c) {
        ControllerPolicy d(N, std::vector<std::size_t>(S));
        for (std::size_t k = 0; k < slots; ++k) {
            d[k / S][k % S] = model.stages[k / S].admissible[k % S][c % radix[k]];
            c /= radix[k];
        }
        return d;
    };

    constexpr std::uint64_t kBlock = 1 << 14;
    std::vector<double> best_value(S, std::numeric_limits<double>::infinity());
    std::vector<std::uint64_t> best_controller(S, 0);
    std::vector<std::vector<std::size_t>> best_nature(S);

    std::vector<std::vector<double>> worst(kBlock, std::vector<double>(S));
    std::vector<std::vector<std::size_t>> worst_nature(kBlock);
    for (std::uint64_t first = 0; first < controllers; first += kBlock) {
        const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, controllers - first));
        parallel_for(len, [&](std::size_t j) {
            const ControllerPolicy d = decode_controller(first + j);
            // Nature digits; slot n * S + s, stage 0 changes fastest so most steps
            // only recompute the first stage.
            std::vector<std::size_t> digit(slots, 0), nradix(slots);
            for (std::size_t k = 0; k < slots; ++k)
                nradix[k] = e.candidates(k / S, k % S, d[k / S][k % S]);
            ValueTable V(N + 1, std::vector<double>(S));
            V[N] = model.terminal_cost;
            std::size_t dirty = N; // recompute stages [0, dirty)
            auto& best = worst[j];
            auto& arg = worst_nature[j];
            std::fill(best.begin(), best.end(), -std::numeric_limits<double>::infinity());
            arg.assign(S * slots, 0);
            while (true) {
                for (std::size_t step = N - dirty; step < N; ++step) {
                    const std::size_t n = N - 1 - step;
                    for (std::size_t s = 0; s < S; ++s)
                        V[n][s] = e.step(n, s, d[n][s], digit[n * S + s], V[n + 1]);
                }
                for (std::size_t s = 0; s < S; ++s)
                    if (V[0][s] > best[s]) {
                        best[s] = V[0][s];
                        std::copy(digit.begin(), digit.end(), arg.begin() + static_cast<std::ptrdiff_t>(s * slots));
                    }
                std::size_t k = 0;
                while (k < slots && ++digit[k] == nradix[k])
                    digit[k++] = 0;
                if (k == slots)
                    break;
                dirty = k / S + 1;
            }
        }, 16);
        for (std::size_t j = 0; j < len; ++j)
            for (std::size_t s = 0; s < S; ++s)
                if (worst[j][s] < best_value[s]) {
                    best_value[s] = worst[j][s];
                    best_controller[s] = first + j;
                    best_nature[s].assign(worst_nature[j].begin() + static_cast<std::ptrdiff_t>(s * slots),
                                          worst_nature[j].begin() + static_cast<std::ptrdiff_t>((s + 1) * slots));
                }
    }

    OracleResult out;
    out.evaluations = count;
    out.values = best_value;
    for (std::size_t s = 0; s < S; ++s) {
        const ControllerPolicy d = decode_controller(best_controller[s]);
        NaturePolicy g(N);
        for (std::size_t n = 0; n < N; ++n) {
            g[n].assign(S, std::vector<std::size_t>(model.stages[n].actions.size(), kUnset));
            for (std::size_t x = 0; x < S; ++x)
                g[n][x][d[n][x]] = best_nature[s][n * S + x];
        }
        out.controllers.push_back(d);
        out.natures.push_back(std::move(g));
    }
    return out;
}

std::uint64_t history_enumeration_count(const FiniteRobustMDP& model) {
    require_valid(model);
    if (model.horizon > 2)
        throw EnumerationRefused("history oracle supports horizons of at most 2");
    const Enumerable e(model);
    std::uint64_t total = 0;
    for (std::size_t x0 = 0; x0 < e.S; ++x0) {
        std::uint64_t tail = 1;
        if (e.N == 2)
            for (std::size_t x1 = 0; x1 < e.S; ++x1) {
                std::uint64_t per = 0;
                for (std::size_t a1 : model.stages[1].admissible[x1])
                    per = sat_add(per, e.candidates(1, x1, a1));
                tail = sat_mul(tail, per);
            }
        for (std::size_t a0 : model.stages[0].admissible[x0])
            total = sat_add(total, sat_mul(e.candidates(0, x0, a0), tail));
    }
    return total;
}

std::vector<double> oracle_history_value(const FiniteRobustMDP& model, std::uint64_t cap) {
    const std::uint64_t count = history_enumeration_count(model);
    if (count > cap)
        throw EnumerationCapExceeded(count, cap);
    const Enumerable e(model);
    const std::size_t S = e.S;
    std::vector<double> out(S);
    const std::vector<double>& terminal = model.terminal_cost;

    for (std::size_t x0 = 0; x0 < S; ++x0) {
        double inf_value = std::numeric_limits<double>::infinity();
        for (std::size_t a0 : model.stages[0].admissible[x0]) {
            if (e.N == 1) {
                double sup_value = -std::numeric_limits<double>::infinity();
                for (std::size_t g0 = 0; g0 < e.candidates(0, x0, a0); ++g0)
                    sup_value = std::max(sup_value, e.step(0, x0, a0, g0, terminal));
                inf_value = std::min(inf_value, sup_value);
                continue;
            }
            // Controller tail: a1 as a function of x1 (history (x0, a0, x1)).
            std::vector<std::size_t> tail(S, 0);
            while (true) {
                std::vector<std::size_t> nat(S, 0);
                double sup_value = -std::numeric_limits<double>::infinity();
                while (true) {
                    std::vector<double> W(S);
                    for (std::size_t x1 = 0; x1 < S; ++x1) {
                        const std::size_t a1 = model.stages[1].admissible[x1][tail[x1]];
                        W[x1] = e.step(1, x1, a1, nat[x1], terminal);
                    }
                    for (std::size_t g0 = 0; g0 < e.candidates(0, x0, a0); ++g0)
                        sup_value = std::max(sup_value, e.step(0, x0, a0, g0, W));
                    std::size_t k = 0;
                    while (k < S) {
                        const std::size_t a1 = model.stages[1].admissible[k][tail[k]];
                        if (++nat[k] < e.candidates(1, k, a1))
                            break;
                        nat[k++] = 0;
                    }
                    if (k == S)
                        break;
                }
                inf_value = std::min(inf_value, sup_value);
                std::size_t k = 0;
                while (k < S && ++tail[k] == model.stages[1].admissible[k].size())
                    tail[k++] = 0;
                if (k == S)
                    break;
            }
        }
        out[x0] = inf_value;
    }
    return out;
}

} // namespace rmdp
