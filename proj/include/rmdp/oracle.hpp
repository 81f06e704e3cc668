#pragma once

#include "rmdp/solver.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rmdp {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// The oracle declined to enumerate the instance.
class EnumerationRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EnumerationCapExceeded : public EnumerationRefused {
public:
    EnumerationCapExceeded(std::uint64_t count, std::uint64_t cap);
    std::uint64_t count() const { return count_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t count_;
    std::uint64_t cap_;
};

struct OracleResult {
    /// inf over controllers of sup over nature of V_0(x_s), per start state s.
    std::vector<double> values;
    /// Minimizing controller and its worst nature policy, per start state.
    /// Nature entries index nature_candidates() at the chosen action.
    std::vector<ControllerPolicy> controllers;
    std::vector<NaturePolicy> natures;
    std::uint64_t evaluations = 0;
};

/// Number of (Markov controller, on-path nature) pairs; saturates at UINT64_MAX.
std::uint64_t oracle_enumeration_count(const FiniteRobustMDP& model);

/// Exhaustive min over Markov controllers of max over Markov nature policies.
OracleResult oracle_min_max(const FiniteRobustMDP& model, std::uint64_t cap = kDefaultEnumerationCap);

/// Number of history-dependent (controller, nature) pairs for horizon <= 2.
std::uint64_t history_enumeration_count(const FiniteRobustMDP& model);

/**
 * Exhaustive inf-sup over deterministic history-dependent policies for N <= 2:
 * the controller's stage-1 action is a function of (x0, a0, x1) and nature's
 * choices are functions of the full history up to the current action.
 */
std::vector<double> oracle_history_value(const FiniteRobustMDP& model, std::uint64_t cap = kDefaultEnumerationCap);

} // namespace rmdp
