#pragma once

#include "alphatree/report.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace alphatree {

using nlohmann::json;

/// Leaf = its weight, internal node = array of children.
json tree_to_json(const AlphaTree& tree);
json forest_to_json(const Forest& forest); // array of root documents
/// Leaves are numbered left to right. Throws InputError on malformed documents.
AlphaTree tree_from_json(const json& doc);

json levels_to_json(const LevelSeq& levels);
LevelSeq levels_from_json(const json& doc);

/// Array of {step, weight, arity, participants:[{kind, index, sign, role}],
/// accordion_span}. Steps, leaves and circles are numbered from 1; a circle's
/// index is the step that created it.
json trace_to_json(const CombinationTrace& trace);
CombinationTrace trace_from_json(const json& doc, std::size_t leaf_count);

json stats_to_json(const EngineStats& stats);
json report_to_json(const SolveReport& report, const WeightSeq& weights);

std::string to_dot(const AlphaTree& tree);

/// One line per step. Participants sit inside "[+ ... ]", an accordion inside
/// parentheses, negative elements as "[- w]", circles as c<step>(weight).
std::string pretty_trace(const CombinationTrace& trace, const WeightSeq& weights);

/// Nonnegative integers separated by whitespace and/or commas. Throws InputError.
WeightSeq parse_weights(std::string_view text);

std::string levels_to_text(const LevelSeq& levels);

} // namespace alphatree
