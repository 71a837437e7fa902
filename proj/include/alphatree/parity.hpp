#pragma once

#include "alphatree/weight.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace alphatree {

enum class UnitKind { square, pcn };

/// One unit of a run handed to the ternary engine: a bare leaf or a solved
/// permanent circular node.
struct UnitDescriptor {
    UnitKind kind = UnitKind::square;
    Weight weight;
};

enum class ParityKind { all_ternary, split_pcn, binary_pair };

struct ParityAction {
    ParityKind kind = ParityKind::all_ternary;
    std::size_t unit = 0; // PCN to split, or left unit of the bottom pair

    friend bool operator==(const ParityAction&, const ParityAction&) = default;
};

/// Ways to make (unit count - target_roots) even. An already even deficit
/// gives the single all-ternary action; otherwise one split per PCN unit,
/// then one bottom pair per minimum-weight adjacent pair of square units.
std::vector<ParityAction> parity_plan(std::span<const UnitDescriptor> units, std::size_t target_roots = 1);

} // namespace alphatree
