#pragma once

#include "alphatree/weight.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace alphatree {

using NodeId = std::uint32_t;
using LevelSeq = std::vector<int>;

struct TreeNode {
    std::vector<NodeId> children; // empty for a leaf, otherwise 2 or 3 entries
    std::size_t leaf_index = 0;   // 0-based position in the weight sequence (leaves only)
    Weight subtree_weight;

    bool is_leaf() const noexcept { return children.empty(); }
};

/// Ordered forest over a weight sequence, stored as an id-indexed node table.
///
/// Node ids are stable; roots are listed left to right. A k-sum snapshot is a
/// Forest with several roots, a finished tree is a Forest with one root.
class Forest {
public:
    Forest() = default;

    const TreeNode& node(NodeId id) const { return nodes_.at(id); }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    const std::vector<NodeId>& roots() const noexcept { return roots_; }
    std::size_t leaf_count() const noexcept { return leaf_count_; }
    std::size_t internal_count() const noexcept { return nodes_.size() - leaf_count_; }

    /// Leaf ids in left-to-right (in-order) traversal.
    std::vector<NodeId> leaves_in_order() const;

private:
    friend class ForestBuilder;

    std::vector<TreeNode> nodes_;
    std::vector<NodeId> roots_;
    std::size_t leaf_count_ = 0;
};

class ForestBuilder {
public:
    NodeId add_leaf(std::size_t leaf_index, Weight weight);
    /// Subtree weight is the sum of the children's subtree weights.
    NodeId add_internal(std::vector<NodeId> children);
    const TreeNode& node(NodeId id) const { return forest_.nodes_.at(id); }

    Forest build(std::vector<NodeId> roots) &&;

private:
    Forest forest_;
};

/// A forest with exactly one root.
class AlphaTree {
public:
    AlphaTree() = default;
    /// Throws StructuralError unless the forest has exactly one root.
    explicit AlphaTree(Forest forest);

    NodeId root() const { return forest_.roots().front(); }
    const TreeNode& node(NodeId id) const { return forest_.node(id); }
    const Forest& forest() const noexcept { return forest_; }
    std::size_t leaf_count() const noexcept { return forest_.leaf_count(); }
    bool empty() const noexcept { return forest_.roots().empty(); }

private:
    Forest forest_;
};

/// Sum of w_i * level_i. Throws StructuralError if the leaves do not cover
/// `weights` exactly (count or per-leaf weight mismatch).
Weight tree_cost(const AlphaTree& tree, const WeightSeq& weights);
Weight forest_cost(const Forest& forest, const WeightSeq& weights);

/// Sum of subtree weights over internal nodes; equals the cost for well-formed trees.
Weight internal_weight_sum(const Forest& forest);

/// Root distance of every leaf, in leaf order (forest roots are level 0).
LevelSeq leaf_levels(const AlphaTree& tree);
LevelSeq leaf_levels(const Forest& forest);

/// True iff the in-order leaves carry leaf_index 0..n-1 ascending.
bool is_alphabetic(const AlphaTree& tree);
bool is_alphabetic(const Forest& forest);

/// Internal-node arity histogram: [count of arity 2, count of arity 3, other].
struct ArityCounts {
    std::size_t binary = 0;
    std::size_t ternary = 0;
    std::size_t other = 0;
};
ArityCounts arity_counts(const Forest& forest);

/// Checks subtree weights, arity in {2,3}, ids in range and single parenthood.
void validate_structure(const Forest& forest);

/// Nested parenthesized rendering by leaf weight, e.g. "((4,2),(3,4))".
/// Forest roots are joined by spaces.
std::string to_nested_string(const Forest& forest);
std::string to_nested_string(const AlphaTree& tree);

/// Parses the nested parenthesized form back into a tree; leaves are numbered
/// left to right. A bare number is a single-leaf tree.
AlphaTree tree_from_nested_string(const std::string& text);

/// Same shape and leaf indices (weights compared too).
bool same_structure(const Forest& a, const Forest& b);
bool same_structure(const AlphaTree& a, const AlphaTree& b);

} // namespace alphatree
