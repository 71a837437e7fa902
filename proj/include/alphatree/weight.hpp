#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace alphatree {

/// Exact integer weight with symbolic infinities.
///
/// Infinities only serve as sentinels (e.g. around a sequence when looking
/// for permanent circular nodes); they never end up inside a tree.
class Weight {
public:
    enum class Kind : std::uint8_t { minus_infinity, finite, plus_infinity };

    constexpr Weight() noexcept = default;
    constexpr Weight(std::int64_t value) noexcept : value_(value) {} // NOLINT(implicit)

    static constexpr Weight plus_infinity() noexcept { return Weight(Kind::plus_infinity); }
    static constexpr Weight minus_infinity() noexcept { return Weight(Kind::minus_infinity); }

    constexpr Kind kind() const noexcept { return kind_; }
    constexpr bool is_finite() const noexcept { return kind_ == Kind::finite; }

    /// Throws std::domain_error for infinities.
    std::int64_t value() const;

    friend constexpr bool operator==(const Weight&, const Weight&) noexcept = default;
    friend constexpr std::strong_ordering operator<=>(const Weight& a, const Weight& b) noexcept {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (a.kind_ != Kind::finite) return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }

    // Overflow and (+inf) + (-inf) throw.
    friend Weight operator+(const Weight& a, const Weight& b);
    friend Weight operator-(const Weight& a);
    friend Weight operator*(const Weight& a, std::int64_t factor);
    friend Weight operator-(const Weight& a, const Weight& b) { return a + (-b); }
    Weight& operator+=(const Weight& other) { return *this = *this + other; }

    std::string to_string() const;

private:
    explicit constexpr Weight(Kind kind) noexcept : kind_(kind) {}

    Kind kind_ = Kind::finite;
    std::int64_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

using WeightSeq = std::vector<Weight>;

/// Checks the solver entry contract (n >= 1, finite, nonnegative, and small
/// enough that every cost fits in 64 bits) and returns the raw values.
std::vector<std::int64_t> finite_weights(const WeightSeq& weights);

WeightSeq to_weight_seq(std::span<const std::int64_t> values);

} // namespace alphatree
