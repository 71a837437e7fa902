#pragma once

#include "alphatree/weight.hpp"

#include <cstddef>
#include <vector>

namespace alphatree {

/// A run of at least two adjacent leaves lighter than both neighbours
/// (infinite weight beyond the ends). Leaf indices are 0-based, inclusive.
struct PcnNode {
    std::size_t first = 0;
    std::size_t last = 0;
    Weight total_weight;
    std::vector<PcnNode> children; // disjoint, left to right

    std::size_t size() const noexcept { return last - first + 1; }
};

/// Every qualifying span except the whole sequence, nested into a forest.
/// The spans form a laminar family, so the nesting is unique.
std::vector<PcnNode> detect_pcns(const WeightSeq& weights);

} // namespace alphatree
