#pragma once

#include "alphatree/report.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace alphatree {

/// Sequence order key: (position, serial). A square at leaf p sits at 2p+2; a
/// circle sits just before its left participant's leaf, or at its left
/// participant's position when that is a circle; serial separates circles.
using OrderKey = std::pair<std::int64_t, std::int64_t>;

/// A square that may currently enter an accordion with negative weight.
struct NegativeSlot {
    std::size_t leaf = 0;
    std::int64_t weight = 0;
    std::size_t owner_circle = 0; // Phase I circle the square last joined positively

    friend bool operator==(const NegativeSlot&, const NegativeSlot&) = default;
};

struct Element {
    NodeRef ref;
    int sign = +1;
    std::int64_t weight = 0; // unsigned weight of the node
    OrderKey key;
};

/// Alternating run +p1, -n1, +p2, ..., +pk (k >= 1). With k == 1 the single
/// element can be any top-level node; otherwise the positives are top-level
/// squares and the negatives are available negative squares.
struct Accordion {
    std::vector<Element> elements;
    std::int64_t weight = 0; // alternating sum

    bool is_single() const noexcept { return elements.size() == 1; }
};

struct Candidate {
    Element left;
    Accordion middle;
    Element right;
    std::int64_t weight = 0;
};

/// Selection order: weight, then left key, then accordion length, then the
/// remaining element keys left to right.
bool selected_before(const Candidate& a, const Candidate& b);

/// e.g. "(6, (+6, -10, +6), 6) = 14"
std::string describe(const Candidate& candidate);

struct TopItem {
    NodeRef ref;
    std::int64_t weight = 0;
    OrderKey key;
};

/// Mutable state of the ternary combination phase on one weight sequence.
///
/// The sequence holds squares (original or reappeared) and circles. After k
/// steps the signed levels of the trace describe the optimal k-sum forest
/// that available_negatives() inspects.
class EngineState {
public:
    explicit EngineState(std::vector<std::int64_t> weights);

    std::size_t leaf_count() const noexcept { return weights_.size(); }
    std::size_t steps_done() const noexcept { return steps_.size(); }
    bool finished() const noexcept { return items_.size() <= 1; }

    CombinationTrace trace() const { return CombinationTrace(weights_.size(), steps_); }
    const LevelSeq& levels() const noexcept { return levels_; }
    const std::vector<TopItem>& sequence() const noexcept { return items_; }
    const EngineStats& stats() const noexcept { return stats_; }

    std::vector<NegativeSlot> available_negatives() const;

    /// Every candidate, sorted in selection order.
    std::vector<Candidate> enumerate_candidates() const;

    /// True iff applying the candidate leaves a valid pure-ternary forest.
    bool is_valid(const Candidate& candidate) const;

    /// First valid candidate in selection order. Throws EngineStuck.
    Candidate select();

    void apply(const Candidate& candidate);
    void step() { apply(select()); }

private:
    std::vector<Candidate> generate(std::span<const NegativeSlot> negatives, bool lightest_outer_only) const;
    void add_net(const Element& e, int sign, std::vector<int>& dense, std::vector<std::uint32_t>& touched) const;
    void insert_item(const TopItem& item);
    void erase_item(NodeRef ref);

    std::vector<std::int64_t> weights_;
    std::vector<CombinationStep> steps_;
    std::vector<std::int64_t> circle_weight_;
    std::vector<OrderKey> circle_key_;
    std::vector<bool> circle_top_;
    // Signed leaf multiplicities below each top-level circle; levels_ is their sum.
    std::vector<std::vector<std::pair<std::uint32_t, int>>> circle_net_;
    std::vector<TopItem> items_;
    std::vector<std::size_t> owner_;
    std::set<std::pair<std::size_t, std::size_t>> spent_;
    LevelSeq levels_;
    EngineStats stats_;
};

/// The ternary Phase I on a sequence with an odd number of leaves. With
/// `max_steps` the run stops early and the trace describes a k-sum forest.
/// Throws PreconditionViolation for even n.
CombinationTrace pure_ternary_phase1(const WeightSeq& weights, std::optional<std::size_t> max_steps = std::nullopt,
                                     EngineStats* stats = nullptr);

/// Same engine without the parity precondition: runs exactly `steps` steps.
CombinationTrace run_ternary_phase1(std::span<const std::int64_t> weights, std::size_t steps, EngineStats* stats = nullptr);

/// Phase I, signed levels and pure-ternary reconstruction.
SolveReport pure_ternary_solve(const WeightSeq& weights);

} // namespace alphatree
