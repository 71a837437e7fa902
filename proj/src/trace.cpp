#include "alphatree/trace.hpp"

#include "alphatree/error.hpp"

#include <string>

namespace alphatree {

std::string_view to_string(Role role) noexcept {
    switch (role) {
    case Role::outer:
        return "outer";
    case Role::accordion:
        return "accordion-element";
    case Role::plain:
        break;
    }
    return "plain";
}

std::optional<Role> role_from_string(std::string_view text) noexcept {
    if (text == "plain") return Role::plain;
    if (text == "outer") return Role::outer;
    if (text == "accordion" || text == "accordion-element") return Role::accordion;
    return std::nullopt;
}

CombinationTrace CombinationTrace::prefix(std::size_t k) const {
    if (k > steps_.size()) k = steps_.size();
    return CombinationTrace(leaf_count_, std::vector<CombinationStep>(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(k)));
}

Weight CombinationTrace::total_increment() const {
    Weight total;
    for (const auto& s : steps_) total += s.increment;
    return total;
}

std::vector<Weight> CombinationTrace::increments() const {
    std::vector<Weight> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back(s.increment);
    return out;
}

void CombinationTrace::check_references() const {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        const auto& step = steps_[i];
        if (step.participants.size() < 2) throw TraceError("step " + std::to_string(i + 1) + " has fewer than two participants");
        for (const auto& p : step.participants) {
            if (p.sign != 1 && p.sign != -1) throw TraceError("participant sign must be +1 or -1");
            const bool ok = p.ref.kind == RefKind::leaf ? p.ref.index < leaf_count_ : p.ref.index < i;
            if (!ok) throw TraceError("step " + std::to_string(i + 1) + " has a dangling reference");
        }
    }
}

void check_increments(const CombinationTrace& trace, const WeightSeq& weights) {
    if (weights.size() != trace.leaf_count()) throw TraceError("trace and weight sequence differ in length");
    trace.check_references();
    const auto& steps = trace.steps();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        Weight sum;
        for (const auto& p : steps[i].participants) {
            const Weight w = p.ref.kind == RefKind::leaf ? weights[p.ref.index] : steps[p.ref.index].increment;
            sum += p.sign > 0 ? w : -w;
        }
        if (sum != steps[i].increment)
            throw TraceError("step " + std::to_string(i + 1) + " records " + steps[i].increment.to_string() +
                             " but its participants sum to " + sum.to_string());
    }
}

} // namespace alphatree
