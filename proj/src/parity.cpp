#include "alphatree/parity.hpp"

#include <optional>

namespace alphatree {

std::vector<ParityAction> parity_plan(std::span<const UnitDescriptor> units, std::size_t target_roots) {
    std::vector<ParityAction> plan;
    if (units.size() >= target_roots && (units.size() - target_roots) % 2 == 0) {
        plan.push_back({ParityKind::all_ternary, 0});
        return plan;
    }
    for (std::size_t i = 0; i < units.size(); ++i)
        if (units[i].kind == UnitKind::pcn) plan.push_back({ParityKind::split_pcn, i});

    std::optional<Weight> lightest;
    for (std::size_t i = 0; i + 1 < units.size(); ++i) {
        if (units[i].kind != UnitKind::square || units[i + 1].kind != UnitKind::square) continue;
        const Weight pair = units[i].weight + units[i + 1].weight;
        if (!lightest || pair < *lightest) lightest = pair;
    }
    for (std::size_t i = 0; lightest && i + 1 < units.size(); ++i) {
        if (units[i].kind != UnitKind::square || units[i + 1].kind != UnitKind::square) continue;
        if (units[i].weight + units[i + 1].weight == *lightest) plan.push_back({ParityKind::binary_pair, i});
    }
    return plan;
}

} // namespace alphatree
