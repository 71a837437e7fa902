#include "alphatree/oracle.hpp"

#include "alphatree/error.hpp"

#include <limits>
#include <string>
#include <vector>

namespace alphatree {

namespace {

constexpr std::int64_t unreachable = std::numeric_limits<std::int64_t>::max();

struct Split {
    int arity = 0; // 0 for a single leaf
    std::size_t a = 0, b = 0;
};

NodeId build(ForestBuilder& fb, const std::vector<std::vector<Split>>& split, const std::vector<std::int64_t>& w,
             std::size_t i, std::size_t j) {
    if (i == j) return fb.add_leaf(i, Weight(w[i]));
    const Split s = split[i][j];
    if (s.arity == 2) return fb.add_internal({build(fb, split, w, i, s.a), build(fb, split, w, s.a + 1, j)});
    return fb.add_internal(
        {build(fb, split, w, i, s.a), build(fb, split, w, s.a + 1, s.b), build(fb, split, w, s.b + 1, j)});
}

} // namespace

DpResult dp_optimal(const WeightSeq& weights, AritySet arity) {
    const auto w = finite_weights(weights);
    if (!arity.two && !arity.three) throw PreconditionViolation("arity set is empty");
    const std::size_t n = w.size();
    std::vector<std::int64_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + w[i];

    std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n, unreachable));
    std::vector<std::vector<Split>> split(n, std::vector<Split>(n));
    // pair[x][j]: best C[x,b] + C[b+1,j]; pair_at[x][j]: its smallest b.
    std::vector<std::vector<std::int64_t>> pair(n, std::vector<std::int64_t>(n, unreachable));
    std::vector<std::vector<std::size_t>> pair_at(n, std::vector<std::size_t>(n, 0));

    for (std::size_t i = 0; i < n; ++i) cost[i][i] = 0;
    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len - 1;
            std::int64_t best = unreachable;
            Split choice;
            std::int64_t best_pair = unreachable;
            std::size_t best_pair_at = 0;
            for (std::size_t a = i; a < j; ++a) {
                const std::int64_t left = cost[i][a];
                if (left == unreachable) continue;
                const std::int64_t right = cost[a + 1][j];
                if (right != unreachable && left + right < best_pair) {
                    best_pair = left + right;
                    best_pair_at = a;
                }
                if (arity.two && right != unreachable && left + right < best) {
                    best = left + right;
                    choice = {2, a, 0};
                }
                if (arity.three && a + 1 < j && pair[a + 1][j] != unreachable && left + pair[a + 1][j] < best) {
                    best = left + pair[a + 1][j];
                    choice = {3, a, pair_at[a + 1][j]};
                }
            }
            pair[i][j] = best_pair;
            pair_at[i][j] = best_pair_at;
            if (best != unreachable) {
                cost[i][j] = best + prefix[j + 1] - prefix[i];
                split[i][j] = choice;
            }
        }
    }
    if (cost[0][n - 1] == unreachable)
        throw Infeasible("no tree with the requested arities has " + std::to_string(n) + " leaves");
    ForestBuilder fb;
    const NodeId root = build(fb, split, w, 0, n - 1);
    return {Weight(cost[0][n - 1]), AlphaTree(std::move(fb).build({root}))};
}

namespace {

// A partially built tree: the open intervals still to be expanded, each with
// its depth, plus the cost accumulated by finished leaves.
struct Pending {
    std::vector<std::pair<std::size_t, std::size_t>> open;
    std::vector<int> depth;
    std::int64_t cost = 0;
};

} // namespace

ExhaustiveResult exhaustive_optimal(const WeightSeq& weights, AritySet arity) {
    if (weights.size() > exhaustive_limit)
        throw RefusedSize("exhaustive enumeration is limited to " + std::to_string(exhaustive_limit) + " leaves");
    const auto w = finite_weights(weights);
    if (!arity.two && !arity.three) throw PreconditionViolation("arity set is empty");

    ExhaustiveResult result;
    std::int64_t best = unreachable;
    std::vector<Pending> work;
    work.push_back({{{0, w.size() - 1}}, {0}, 0});
    while (!work.empty()) {
        Pending cur = std::move(work.back());
        work.pop_back();
        while (!cur.open.empty() && cur.open.back().first == cur.open.back().second) {
            cur.cost += w[cur.open.back().first] * cur.depth.back();
            cur.open.pop_back();
            cur.depth.pop_back();
        }
        if (cur.open.empty()) {
            ++result.tree_count;
            if (cur.cost < best) {
                best = cur.cost;
                result.optimal_count = 1;
            } else if (cur.cost == best) {
                ++result.optimal_count;
            }
            continue;
        }
        const auto [i, j] = cur.open.back();
        const int d = cur.depth.back() + 1;
        cur.open.pop_back();
        cur.depth.pop_back();
        for (std::size_t a = i; a < j; ++a) {
            if (arity.two) {
                Pending next = cur;
                next.open.insert(next.open.end(), {{a + 1, j}, {i, a}});
                next.depth.insert(next.depth.end(), {d, d});
                work.push_back(std::move(next));
            }
            if (arity.three) {
                for (std::size_t b = a + 1; b < j; ++b) {
                    Pending next = cur;
                    next.open.insert(next.open.end(), {{b + 1, j}, {a + 1, b}, {i, a}});
                    next.depth.insert(next.depth.end(), {d, d, d});
                    work.push_back(std::move(next));
                }
            }
        }
    }
    if (best == unreachable) throw Infeasible("no tree with the requested arities has " + std::to_string(w.size()) + " leaves");
    result.cost = Weight(best);
    return result;
}

} // namespace alphatree
