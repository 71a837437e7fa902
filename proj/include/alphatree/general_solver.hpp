#pragma once

#include "alphatree/report.hpp"

namespace alphatree {

struct GeneralOptions {
    bool with_oracle = true; // fill SolveReport::oracle_cost with the mixed-arity DP optimum
};

/// Ternary trees whose internal nodes have two or three children.
///
/// Permanent circular nodes are solved bottom-up, each in a single-root and a
/// two-root form. Every run of units is fixed for parity (split one PCN or
/// pair two light adjacent squares at the bottom) and completed by the ternary
/// engine; the cheapest plan wins.
SolveReport general_solve(const WeightSeq& weights, const GeneralOptions& options = {});

} // namespace alphatree
