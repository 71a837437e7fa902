#pragma once

#include "alphatree/trace.hpp"
#include "alphatree/tree.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace alphatree {

enum class TreeMode { binary, ternary_mixed, pure_ternary };

/// Phase II generalized to signed traces.
///
/// A leaf's level is the sum over its occurrences of sign * depth, where an
/// accordion element counts as a direct child of the circle it built. With
/// several roots (a k-prefix) each uncombined leaf ends at level 0.
/// Throws TraceError on dangling references.
LevelSeq signed_levels(const CombinationTrace& trace);

/// Phase III from levels alone.
///
/// binary: repeatedly merge the leftmost adjacent pair at the maximum level.
/// ternary modes: inside the leftmost run of maximum-level nodes, merge the
/// leftmost three, or the pair when the run has length 2 (mixed only). Mixed
/// mode rejects runs of length L >= 4 with L mod 3 == 1.
/// Throws InvalidLevelSequence when the rules cannot reach a single level-0 root.
AlphaTree reconstruct_from_levels(const LevelSeq& levels, const WeightSeq& weights, TreeMode mode);

/// As above, but stops once every remaining node is at level 0 (k-sum snapshot).
Forest reconstruct_forest_from_levels(const LevelSeq& levels, const WeightSeq& weights, TreeMode mode);

/// Phase III by trace replay: signed levels, then reconstruction guided by the
/// recorded arities. All-binary traces use the binary rule; otherwise every
/// binary step must join two adjacent leaves and is merged first, and the
/// rest is rebuilt as a pure ternary forest (which the levels determine).
/// Prefix traces yield forests. Throws TraceError / InvalidLevelSequence.
Forest reconstruct_from_trace(const CombinationTrace& trace, const WeightSeq& weights);
AlphaTree reconstruct_tree_from_trace(const CombinationTrace& trace, const WeightSeq& weights);

/// Compact pure-ternary forest shape, used by the engine on every step.
struct ShapeNode {
    std::array<std::int32_t, 3> children{-1, -1, -1};
    std::int32_t leaf = -1; // >= 0 for leaves
};

struct PureShape {
    std::vector<ShapeNode> nodes;
    std::vector<std::int32_t> roots;
};

/// Pure-ternary forest for `levels` (every internal node has three children,
/// roots at level 0), built with a single left-to-right stack pass.
/// Returns nullopt when no such forest exists.
std::optional<PureShape> pure_ternary_shape(std::span<const int> levels);

/// Validity test only; same answer as pure_ternary_shape(...).has_value().
bool is_pure_ternary_forest(std::span<const int> levels);

Forest forest_from_shape(const PureShape& shape, const WeightSeq& weights);

/// Plain all-positive steps, one per internal node in post-order. Used to
/// report trees that were not built by a combination phase (the DP oracle).
CombinationTrace trace_from_tree(const AlphaTree& tree);

} // namespace alphatree
