#include "alphatree/tree.hpp"

#include "alphatree/error.hpp"

#include <cctype>
#include <functional>
#include <utility>

namespace alphatree {

namespace {

template <typename Visit>
void walk_with_depth(const Forest& forest, Visit&& visit) {
    std::vector<std::pair<NodeId, int>> stack;
    for (auto it = forest.roots().rbegin(); it != forest.roots().rend(); ++it) stack.emplace_back(*it, 0);
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        const TreeNode& nd = forest.node(id);
        visit(id, nd, depth);
        for (auto c = nd.children.rbegin(); c != nd.children.rend(); ++c) stack.emplace_back(*c, depth + 1);
    }
}

} // namespace

std::vector<NodeId> Forest::leaves_in_order() const {
    std::vector<NodeId> out;
    out.reserve(leaf_count_);
    walk_with_depth(*this, [&](NodeId id, const TreeNode& nd, int) {
        if (nd.is_leaf()) out.push_back(id);
    });
    return out;
}

NodeId ForestBuilder::add_leaf(std::size_t leaf_index, Weight weight) {
    TreeNode nd;
    nd.leaf_index = leaf_index;
    nd.subtree_weight = weight;
    forest_.nodes_.push_back(std::move(nd));
    ++forest_.leaf_count_;
    return static_cast<NodeId>(forest_.nodes_.size() - 1);
}

NodeId ForestBuilder::add_internal(std::vector<NodeId> children) {
    if (children.size() < 2) throw StructuralError("internal node needs at least two children");
    TreeNode nd;
    for (NodeId c : children) nd.subtree_weight += forest_.nodes_.at(c).subtree_weight;
    nd.children = std::move(children);
    forest_.nodes_.push_back(std::move(nd));
    return static_cast<NodeId>(forest_.nodes_.size() - 1);
}

Forest ForestBuilder::build(std::vector<NodeId> roots) && {
    forest_.roots_ = std::move(roots);
    return std::move(forest_);
}

AlphaTree::AlphaTree(Forest forest) : forest_(std::move(forest)) {
    if (forest_.roots().size() != 1)
        throw StructuralError("a tree needs exactly one root, got " + std::to_string(forest_.roots().size()));
}

Weight forest_cost(const Forest& forest, const WeightSeq& weights) {
    if (forest.leaf_count() != weights.size())
        throw StructuralError("tree has " + std::to_string(forest.leaf_count()) + " leaves but sequence has " +
                              std::to_string(weights.size()));
    Weight total;
    walk_with_depth(forest, [&](NodeId, const TreeNode& nd, int depth) {
        if (!nd.is_leaf()) return;
        if (nd.leaf_index >= weights.size() || weights[nd.leaf_index] != nd.subtree_weight)
            throw StructuralError("leaf " + std::to_string(nd.leaf_index) + " does not match the sequence");
        total += nd.subtree_weight * depth;
    });
    return total;
}

Weight tree_cost(const AlphaTree& tree, const WeightSeq& weights) { return forest_cost(tree.forest(), weights); }

Weight internal_weight_sum(const Forest& forest) {
    Weight total;
    for (const TreeNode& nd : forest.nodes())
        if (!nd.is_leaf()) total += nd.subtree_weight;
    return total;
}

LevelSeq leaf_levels(const Forest& forest) {
    LevelSeq levels(forest.leaf_count(), 0);
    walk_with_depth(forest, [&](NodeId, const TreeNode& nd, int depth) {
        if (!nd.is_leaf()) return;
        if (nd.leaf_index >= levels.size()) throw StructuralError("leaf index out of range");
        levels[nd.leaf_index] = depth;
    });
    return levels;
}

LevelSeq leaf_levels(const AlphaTree& tree) { return leaf_levels(tree.forest()); }

bool is_alphabetic(const Forest& forest) {
    std::size_t expected = 0;
    bool ok = true;
    walk_with_depth(forest, [&](NodeId, const TreeNode& nd, int) {
        if (nd.is_leaf()) ok = ok && nd.leaf_index == expected++;
    });
    return ok && expected == forest.leaf_count();
}

bool is_alphabetic(const AlphaTree& tree) { return is_alphabetic(tree.forest()); }

ArityCounts arity_counts(const Forest& forest) {
    ArityCounts counts;
    for (const TreeNode& nd : forest.nodes()) {
        if (nd.is_leaf()) continue;
        if (nd.children.size() == 2)
            ++counts.binary;
        else if (nd.children.size() == 3)
            ++counts.ternary;
        else
            ++counts.other;
    }
    return counts;
}

void validate_structure(const Forest& forest) {
    std::vector<int> parents(forest.nodes().size(), 0);
    for (NodeId r : forest.roots()) {
        if (r >= forest.nodes().size()) throw StructuralError("root id out of range");
        ++parents[r];
    }
    for (const TreeNode& nd : forest.nodes()) {
        if (nd.is_leaf()) continue;
        if (nd.children.size() != 2 && nd.children.size() != 3) throw StructuralError("arity must be 2 or 3");
        Weight sum;
        for (NodeId c : nd.children) {
            if (c >= forest.nodes().size()) throw StructuralError("child id out of range");
            ++parents[c];
            sum += forest.node(c).subtree_weight;
        }
        if (sum != nd.subtree_weight) throw StructuralError("subtree weight is not the sum of its children");
    }
    for (int p : parents)
        if (p != 1) throw StructuralError("every node needs exactly one parent or root slot");
}

namespace {

void render(const Forest& forest, NodeId id, std::string& out) {
    const TreeNode& nd = forest.node(id);
    if (nd.is_leaf()) {
        out += nd.subtree_weight.to_string();
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < nd.children.size(); ++i) {
        if (i) out += ',';
        render(forest, nd.children[i], out);
    }
    out += ')';
}

} // namespace

std::string to_nested_string(const Forest& forest) {
    std::string out;
    for (std::size_t i = 0; i < forest.roots().size(); ++i) {
        if (i) out += ' ';
        render(forest, forest.roots()[i], out);
    }
    return out;
}

std::string to_nested_string(const AlphaTree& tree) { return to_nested_string(tree.forest()); }

namespace {

class NestedParser {
public:
    explicit NestedParser(const std::string& text) : text_(text) {}

    AlphaTree parse() {
        NodeId root = node();
        skip_space();
        if (pos_ != text_.size()) fail("trailing characters");
        return AlphaTree(std::move(builder_).build({root}));
    }

private:
    NodeId node() {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            std::vector<NodeId> children{node()};
            skip_space();
            while (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                children.push_back(node());
                skip_space();
            }
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            if (children.size() < 2) fail("internal node with fewer than two children");
            return builder_.add_internal(std::move(children));
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a weight");
        return builder_.add_leaf(next_leaf_++, Weight(std::stoll(text_.substr(start, pos_ - start))));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("nested tree text, offset " + std::to_string(pos_) + ": " + what);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t next_leaf_ = 0;
    ForestBuilder builder_;
};

bool same_subtree(const Forest& a, NodeId x, const Forest& b, NodeId y) {
    const TreeNode& p = a.node(x);
    const TreeNode& q = b.node(y);
    if (p.children.size() != q.children.size() || p.subtree_weight != q.subtree_weight) return false;
    if (p.is_leaf()) return p.leaf_index == q.leaf_index;
    for (std::size_t i = 0; i < p.children.size(); ++i)
        if (!same_subtree(a, p.children[i], b, q.children[i])) return false;
    return true;
}

} // namespace

AlphaTree tree_from_nested_string(const std::string& text) { return NestedParser(text).parse(); }

bool same_structure(const Forest& a, const Forest& b) {
    if (a.roots().size() != b.roots().size()) return false;
    for (std::size_t i = 0; i < a.roots().size(); ++i)
        if (!same_subtree(a, a.roots()[i], b, b.roots()[i])) return false;
    return true;
}

bool same_structure(const AlphaTree& a, const AlphaTree& b) { return same_structure(a.forest(), b.forest()); }

} // namespace alphatree
