#pragma once

#include "alphatree/weight.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace alphatree {

enum class RefKind : std::uint8_t { leaf, circle };

/// A leaf (0-based position in the weight sequence) or a circle (index of the
/// step that created it).
struct NodeRef {
    RefKind kind = RefKind::leaf;
    std::size_t index = 0;

    static constexpr NodeRef leaf(std::size_t i) noexcept { return {RefKind::leaf, i}; }
    static constexpr NodeRef circle(std::size_t i) noexcept { return {RefKind::circle, i}; }
    friend constexpr bool operator==(const NodeRef&, const NodeRef&) noexcept = default;
};

enum class Role : std::uint8_t { plain, outer, accordion };

std::string_view to_string(Role role) noexcept;
std::optional<Role> role_from_string(std::string_view text) noexcept;

struct Participant {
    NodeRef ref;
    int sign = +1;
    Role role = Role::plain;

    friend bool operator==(const Participant&, const Participant&) = default;
};

/// One Phase I combination. The new circle's id is the step's index in the trace.
struct CombinationStep {
    Weight increment;                       // signed sum of participant weights
    std::vector<Participant> participants;  // left to right
    int arity = 3;                          // children of the new circle: 2, or 3 (accordion counts once)
    std::optional<std::pair<std::size_t, std::size_t>> accordion_span; // leaf interval, inclusive

    friend bool operator==(const CombinationStep&, const CombinationStep&) = default;
};

class CombinationTrace {
public:
    CombinationTrace() = default;
    CombinationTrace(std::size_t leaf_count, std::vector<CombinationStep> steps)
        : leaf_count_(leaf_count), steps_(std::move(steps)) {}

    std::size_t leaf_count() const noexcept { return leaf_count_; }
    const std::vector<CombinationStep>& steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_.size(); }

    /// The first k steps (a k-sum snapshot).
    CombinationTrace prefix(std::size_t k) const;
    Weight total_increment() const;
    std::vector<Weight> increments() const;

    /// Every reference points to a leaf < n or an earlier circle.
    /// Throws TraceError otherwise.
    void check_references() const;

    friend bool operator==(const CombinationTrace&, const CombinationTrace&) = default;

private:
    std::size_t leaf_count_ = 0;
    std::vector<CombinationStep> steps_;
};

/// Recomputes each step's signed participant sum and compares it with the
/// recorded increment. Throws TraceError on the first mismatch.
void check_increments(const CombinationTrace& trace, const WeightSeq& weights);

} // namespace alphatree
