#pragma once

#include "alphatree/report.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace alphatree {

enum class SeqKind { square, circle };

/// A node of the Phase I work sequence.
struct SeqNode {
    std::size_t id = 0;
    SeqKind kind = SeqKind::square;
    Weight weight;
    std::size_t position = 0; // order key; a new circle takes its left member's position
};

/// All (left id, right id) pairs with no square strictly between them.
/// `state` must be sorted by position.
std::vector<std::pair<std::size_t, std::size_t>> compatible_pairs(std::span<const SeqNode> state);

/// Hu-Tucker Phase I. Each step joins the lightest compatible pair; ties go to
/// the pair whose (left position, right position) is lexicographically least.
CombinationTrace phase1_combine_binary(const WeightSeq& weights, EngineStats* stats = nullptr);

/// Phase I, signed levels (all positive here), then the binary Phase III rule.
SolveReport hu_tucker(const WeightSeq& weights);

} // namespace alphatree
