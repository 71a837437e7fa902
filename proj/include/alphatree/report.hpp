#pragma once

#include "alphatree/level_phases.hpp"
#include "alphatree/trace.hpp"
#include "alphatree/tree.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace alphatree {

/// Operation counts collected by the combination phases.
struct EngineStats {
    std::size_t steps = 0;
    std::size_t candidates = 0; // candidates generated over all steps
    std::size_t rejected = 0;   // candidates discarded because their forest was invalid
    std::size_t fallbacks = 0;  // steps that needed the full enumeration
};

struct SolveReport {
    std::string algorithm;
    AlphaTree tree;
    Weight cost;
    LevelSeq levels;
    CombinationTrace trace;
    std::optional<Weight> oracle_cost;
    EngineStats stats;
};

} // namespace alphatree
