#pragma once

#include "alphatree/tree.hpp"

#include <cstddef>
#include <cstdint>

namespace alphatree {

/// Allowed internal-node arities. {3} alone is the pure ternary mode.
struct AritySet {
    bool two = false;
    bool three = false;

    friend bool operator==(const AritySet&, const AritySet&) = default;
};

inline constexpr AritySet binary_arity{true, false};
inline constexpr AritySet pure_ternary_arity{false, true};
inline constexpr AritySet mixed_arity{true, true};

struct DpResult {
    Weight cost;
    AlphaTree tree;
};

/// Interval DP: C[i,j] = W(i,j) + min over 2- and 3-way splits.
/// Ties: leftmost first split point, binary before ternary, leftmost second point.
/// Throws Infeasible when no tree exists (e.g. pure ternary with even n).
DpResult dp_optimal(const WeightSeq& weights, AritySet arity);

struct ExhaustiveResult {
    Weight cost;
    std::size_t optimal_count = 0; // distinct optimal shapes
    std::size_t tree_count = 0;    // shapes enumerated
};

inline constexpr std::size_t exhaustive_limit = 11;

/// Enumerates every alphabetic tree with the given arities and evaluates
/// sum(w * depth) directly. Throws RefusedSize for n > 11.
ExhaustiveResult exhaustive_optimal(const WeightSeq& weights, AritySet arity);

} // namespace alphatree
