#include "alphatree/hu_tucker.hpp"

#include "alphatree/error.hpp"

#include <algorithm>
#include <tuple>

namespace alphatree {

std::vector<std::pair<std::size_t, std::size_t>> compatible_pairs(std::span<const SeqNode> state) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t j = i + 1; j < state.size(); ++j) {
            out.emplace_back(state[i].id, state[j].id);
            if (state[j].kind == SeqKind::square) break;
        }
    }
    return out;
}

namespace {

struct Item {
    std::int64_t weight;
    std::size_t position;
    NodeRef ref;
};

// Lexicographic (weight, position) order.
bool lighter(const Item& a, const Item& b) { return std::tie(a.weight, a.position) < std::tie(b.weight, b.position); }

} // namespace

CombinationTrace phase1_combine_binary(const WeightSeq& weights, EngineStats* stats) {
    const std::vector<std::int64_t> w = finite_weights(weights);
    const std::size_t n = w.size();
    std::vector<Item> seq;
    seq.reserve(n);
    for (std::size_t i = 0; i < n; ++i) seq.push_back({w[i], i, NodeRef::leaf(i)});

    std::vector<CombinationStep> steps;
    steps.reserve(n > 0 ? n - 1 : 0);
    std::size_t scanned = 0;
    while (seq.size() > 1) {
        // Every compatible pair lies inside one window: a run of circles plus the
        // squares bounding it. Within a window the best pair is its two lightest.
        bool found = false;
        std::tuple<std::int64_t, std::size_t, std::size_t> best{};
        std::size_t best_a = 0, best_b = 0;
        std::size_t start = 0;
        while (start < seq.size()) {
            std::size_t end = start + 1;
            while (end < seq.size() && seq[end].ref.kind != RefKind::leaf) ++end;
            const std::size_t stop = std::min(end, seq.size() - 1);
            if (stop > start) {
                std::size_t a = start, b = start + 1;
                if (lighter(seq[b], seq[a])) std::swap(a, b);
                for (std::size_t k = start + 2; k <= stop; ++k) {
                    if (lighter(seq[k], seq[a])) {
                        b = a;
                        a = k;
                    } else if (lighter(seq[k], seq[b])) {
                        b = k;
                    }
                }
                scanned += stop - start + 1;
                if (a > b) std::swap(a, b);
                const auto key = std::make_tuple(seq[a].weight + seq[b].weight, seq[a].position, seq[b].position);
                if (!found || key < best) {
                    found = true;
                    best = key;
                    best_a = a;
                    best_b = b;
                }
            }
            start = end;
        }

        CombinationStep step;
        step.arity = 2;
        step.increment = Weight(std::get<0>(best));
        step.participants = {{seq[best_a].ref, +1, Role::plain}, {seq[best_b].ref, +1, Role::plain}};
        steps.push_back(std::move(step));
        seq[best_a] = {std::get<0>(best), seq[best_a].position, NodeRef::circle(steps.size() - 1)};
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(best_b));
    }
    if (stats) {
        stats->steps += steps.size();
        stats->candidates += scanned;
    }
    return CombinationTrace(n, std::move(steps));
}

SolveReport hu_tucker(const WeightSeq& weights) {
    SolveReport report;
    report.algorithm = "hu-tucker";
    report.trace = phase1_combine_binary(weights, &report.stats);
    report.levels = signed_levels(report.trace);
    report.tree = reconstruct_from_levels(report.levels, weights, TreeMode::binary);
    report.cost = tree_cost(report.tree, weights);
    return report;
}

} // namespace alphatree
