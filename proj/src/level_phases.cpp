#include "alphatree/level_phases.hpp"

#include "alphatree/error.hpp"

#include <algorithm>
#include <string>

namespace alphatree {

LevelSeq signed_levels(const CombinationTrace& trace) {
    trace.check_references();
    const auto& steps = trace.steps();
    const std::size_t m = steps.size();

    // paths[c]: signed number of root-to-c paths; depth_sum[c]: signed sum of their lengths.
    std::vector<std::int64_t> paths(m, 0), depth_sum(m, 0);
    std::vector<bool> referenced(m, false);
    for (const auto& step : steps)
        for (const auto& p : step.participants)
            if (p.ref.kind == RefKind::circle) referenced[p.ref.index] = true;
    for (std::size_t c = 0; c < m; ++c)
        if (!referenced[c]) paths[c] = 1;

    std::vector<std::int64_t> levels(trace.leaf_count(), 0);
    for (std::size_t c = m; c-- > 0;) {
        for (const auto& p : steps[c].participants) {
            const std::int64_t count = p.sign * paths[c];
            const std::int64_t depth = p.sign * (depth_sum[c] + paths[c]);
            if (p.ref.kind == RefKind::circle) {
                paths[p.ref.index] += count;
                depth_sum[p.ref.index] += depth;
            } else {
                levels[p.ref.index] += depth;
            }
        }
    }
    return LevelSeq(levels.begin(), levels.end());
}

namespace {

struct Pending {
    NodeId id;
    int level;
};

Forest reconstruct_by_runs(const LevelSeq& levels, const WeightSeq& weights, TreeMode mode, bool want_tree) {
    if (levels.size() != weights.size()) throw InvalidLevelSequence("level and weight sequences differ in length");
    if (levels.empty()) throw InvalidLevelSequence("empty level sequence");
    ForestBuilder builder;
    std::vector<Pending> seq;
    seq.reserve(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0) throw InvalidLevelSequence("negative level at leaf " + std::to_string(i + 1));
        seq.push_back({builder.add_leaf(i, weights[i]), levels[i]});
    }

    for (;;) {
        int q = 0;
        for (const auto& p : seq) q = std::max(q, p.level);
        if (q == 0) break;

        std::size_t first = 0, length = 0;
        if (mode == TreeMode::binary) {
            std::size_t i = 0;
            while (i + 1 < seq.size() && !(seq[i].level == q && seq[i + 1].level == q)) ++i;
            if (i + 1 >= seq.size()) throw InvalidLevelSequence("no adjacent pair at level " + std::to_string(q));
            first = i;
            length = 2;
        } else {
            while (seq[first].level != q) ++first;
            std::size_t run = 1;
            while (first + run < seq.size() && seq[first + run].level == q) ++run;
            if (run == 1) throw InvalidLevelSequence("isolated node at level " + std::to_string(q));
            if (run == 2 && mode == TreeMode::pure_ternary)
                throw InvalidLevelSequence("pair at level " + std::to_string(q) + " in pure ternary mode");
            if (mode == TreeMode::ternary_mixed && run >= 4 && run % 3 == 1)
                throw InvalidLevelSequence("ambiguous run of length " + std::to_string(run));
            length = run >= 3 ? 3 : 2;
        }

        std::vector<NodeId> children;
        for (std::size_t k = 0; k < length; ++k) children.push_back(seq[first + k].id);
        const NodeId parent = builder.add_internal(std::move(children));
        seq[first] = {parent, q - 1};
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(first + 1),
                  seq.begin() + static_cast<std::ptrdiff_t>(first + length));
    }

    if (want_tree && seq.size() != 1)
        throw InvalidLevelSequence("levels end in " + std::to_string(seq.size()) + " roots, not one");
    std::vector<NodeId> roots;
    for (const auto& p : seq) roots.push_back(p.id);
    return std::move(builder).build(std::move(roots));
}

} // namespace

AlphaTree reconstruct_from_levels(const LevelSeq& levels, const WeightSeq& weights, TreeMode mode) {
    return AlphaTree(reconstruct_by_runs(levels, weights, mode, true));
}

Forest reconstruct_forest_from_levels(const LevelSeq& levels, const WeightSeq& weights, TreeMode mode) {
    return reconstruct_by_runs(levels, weights, mode, false);
}

namespace {

// Eager stack pass shared by the shape builder and the validity test. Three
// equal-level nodes on top of the stack are siblings in the unique forest.
template <typename OnLeaf, typename OnMerge>
bool pure_pass(std::span<const int> levels, std::vector<std::pair<int, std::int32_t>>& stack, OnLeaf on_leaf, OnMerge on_merge) {
    stack.clear();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0) return false;
        stack.emplace_back(levels[i], on_leaf(i));
        while (stack.size() >= 3) {
            const std::size_t t = stack.size();
            const int q = stack[t - 1].first;
            if (q == 0 || stack[t - 2].first != q || stack[t - 3].first != q) break;
            const std::int32_t parent = on_merge(stack[t - 3].second, stack[t - 2].second, stack[t - 1].second);
            stack.resize(t - 3);
            stack.emplace_back(q - 1, parent);
        }
    }
    return std::all_of(stack.begin(), stack.end(), [](const auto& e) { return e.first == 0; });
}

} // namespace

std::optional<PureShape> pure_ternary_shape(std::span<const int> levels) {
    PureShape shape;
    shape.nodes.reserve(levels.size() + levels.size() / 2);
    std::vector<std::pair<int, std::int32_t>> stack;
    const bool ok = pure_pass(
        levels, stack,
        [&](std::size_t i) {
            ShapeNode nd;
            nd.leaf = static_cast<std::int32_t>(i);
            shape.nodes.push_back(nd);
            return static_cast<std::int32_t>(shape.nodes.size() - 1);
        },
        [&](std::int32_t a, std::int32_t b, std::int32_t c) {
            ShapeNode nd;
            nd.children = {a, b, c};
            shape.nodes.push_back(nd);
            return static_cast<std::int32_t>(shape.nodes.size() - 1);
        });
    if (!ok) return std::nullopt;
    for (const auto& e : stack) shape.roots.push_back(e.second);
    return shape;
}

bool is_pure_ternary_forest(std::span<const int> levels) {
    std::vector<std::pair<int, std::int32_t>> stack;
    return pure_pass(
        levels, stack, [](std::size_t) { return std::int32_t{0}; },
        [](std::int32_t, std::int32_t, std::int32_t) { return std::int32_t{0}; });
}

Forest forest_from_shape(const PureShape& shape, const WeightSeq& weights) {
    ForestBuilder builder;
    std::vector<NodeId> ids(shape.nodes.size());
    // Children always precede parents in the shape arena.
    for (std::size_t i = 0; i < shape.nodes.size(); ++i) {
        const ShapeNode& nd = shape.nodes[i];
        if (nd.leaf >= 0) {
            ids[i] = builder.add_leaf(static_cast<std::size_t>(nd.leaf), weights.at(static_cast<std::size_t>(nd.leaf)));
        } else {
            ids[i] = builder.add_internal({ids[static_cast<std::size_t>(nd.children[0])], ids[static_cast<std::size_t>(nd.children[1])],
                                           ids[static_cast<std::size_t>(nd.children[2])]});
        }
    }
    std::vector<NodeId> roots;
    for (auto r : shape.roots) roots.push_back(ids[static_cast<std::size_t>(r)]);
    return std::move(builder).build(std::move(roots));
}

Forest reconstruct_from_trace(const CombinationTrace& trace, const WeightSeq& weights) {
    if (weights.size() != trace.leaf_count()) throw TraceError("trace and weight sequence differ in length");
    const LevelSeq levels = signed_levels(trace);
    const auto& steps = trace.steps();
    const bool all_binary = std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.arity == 2; });
    if (all_binary) return reconstruct_forest_from_levels(levels, weights, TreeMode::binary);

    // Bottom pairs become single units one level up.
    const std::size_t n = weights.size();
    std::vector<std::size_t> pair_at(n, n);
    for (const auto& step : steps) {
        if (step.arity != 2) continue;
        const auto& ps = step.participants;
        if (ps.size() != 2 || ps[0].ref.kind != RefKind::leaf || ps[1].ref.kind != RefKind::leaf || ps[0].sign != 1 ||
            ps[1].sign != 1 || ps[1].ref.index != ps[0].ref.index + 1)
            throw TraceError("binary step in a ternary trace must join two adjacent leaves");
        const std::size_t a = ps[0].ref.index;
        if (pair_at[a] != n || (a > 0 && pair_at[a - 1] != n)) throw TraceError("overlapping bottom pairs");
        if (levels[a] != levels[a + 1] || levels[a] < 1) throw TraceError("bottom pair leaves must share a positive level");
        pair_at[a] = a + 1;
    }

    ForestBuilder builder;
    std::vector<NodeId> unit_ids;
    std::vector<int> unit_levels;
    for (std::size_t i = 0; i < n; ++i) {
        if (pair_at[i] != n) {
            const NodeId a = builder.add_leaf(i, weights[i]);
            const NodeId b = builder.add_leaf(i + 1, weights[i + 1]);
            unit_ids.push_back(builder.add_internal({a, b}));
            unit_levels.push_back(levels[i] - 1);
            ++i;
        } else {
            if (levels[i] < 0) throw InvalidLevelSequence("negative signed level at leaf " + std::to_string(i + 1));
            unit_ids.push_back(builder.add_leaf(i, weights[i]));
            unit_levels.push_back(levels[i]);
        }
    }
    const auto shape = pure_ternary_shape(unit_levels);
    if (!shape) throw InvalidLevelSequence("trace levels do not form a ternary forest");
    std::vector<NodeId> ids(shape->nodes.size());
    for (std::size_t i = 0; i < shape->nodes.size(); ++i) {
        const ShapeNode& nd = shape->nodes[i];
        if (nd.leaf >= 0) {
            ids[i] = unit_ids[static_cast<std::size_t>(nd.leaf)];
        } else {
            ids[i] = builder.add_internal({ids[static_cast<std::size_t>(nd.children[0])], ids[static_cast<std::size_t>(nd.children[1])],
                                           ids[static_cast<std::size_t>(nd.children[2])]});
        }
    }
    std::vector<NodeId> roots;
    for (auto r : shape->roots) roots.push_back(ids[static_cast<std::size_t>(r)]);
    return std::move(builder).build(std::move(roots));
}

AlphaTree reconstruct_tree_from_trace(const CombinationTrace& trace, const WeightSeq& weights) {
    return AlphaTree(reconstruct_from_trace(trace, weights));
}

CombinationTrace trace_from_tree(const AlphaTree& tree) {
    std::vector<CombinationStep> steps;
    if (tree.empty()) return {};
    const Forest& f = tree.forest();
    auto walk = [&](auto&& self, NodeId id) -> NodeRef {
        const TreeNode& nd = f.node(id);
        if (nd.is_leaf()) return NodeRef::leaf(nd.leaf_index);
        CombinationStep step;
        for (const NodeId c : nd.children) step.participants.push_back({self(self, c), +1, Role::plain});
        step.increment = nd.subtree_weight;
        step.arity = static_cast<int>(nd.children.size());
        steps.push_back(std::move(step));
        return NodeRef::circle(steps.size() - 1);
    };
    walk(walk, tree.root());
    return CombinationTrace(f.leaf_count(), std::move(steps));
}

} // namespace alphatree
