#include "alphatree/weight.hpp"

#include "alphatree/error.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace alphatree {

std::int64_t Weight::value() const {
    if (!is_finite()) throw std::domain_error("infinite weight has no finite value");
    return value_;
}

Weight operator+(const Weight& a, const Weight& b) {
    if (a.is_finite() && b.is_finite()) {
        std::int64_t sum = 0;
        if (__builtin_add_overflow(a.value_, b.value_, &sum)) throw std::overflow_error("weight overflow");
        return Weight(sum);
    }
    if (a.is_finite()) return b;
    if (b.is_finite() || a.kind_ == b.kind_) return a;
    throw std::domain_error("sum of opposite infinities");
}

Weight operator-(const Weight& a) {
    switch (a.kind_) {
    case Weight::Kind::plus_infinity:
        return Weight::minus_infinity();
    case Weight::Kind::minus_infinity:
        return Weight::plus_infinity();
    case Weight::Kind::finite:
        break;
    }
    if (a.value_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("weight overflow");
    return Weight(-a.value_);
}

Weight operator*(const Weight& a, std::int64_t factor) {
    if (!a.is_finite()) {
        if (factor == 0) throw std::domain_error("infinity times zero");
        return factor > 0 ? a : -a;
    }
    std::int64_t product = 0;
    if (__builtin_mul_overflow(a.value_, factor, &product)) throw std::overflow_error("weight overflow");
    return Weight(product);
}

std::string Weight::to_string() const {
    switch (kind_) {
    case Kind::plus_infinity:
        return "+inf";
    case Kind::minus_infinity:
        return "-inf";
    case Kind::finite:
        break;
    }
    return std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.to_string(); }

std::vector<std::int64_t> finite_weights(const WeightSeq& weights) {
    if (weights.empty()) throw PreconditionViolation("empty weight sequence");
    std::vector<std::int64_t> out;
    out.reserve(weights.size());
    std::int64_t total = 0;
    for (const Weight& w : weights) {
        if (!w.is_finite()) throw PreconditionViolation("solver inputs must be finite");
        if (w.value() < 0) throw PreconditionViolation("solver inputs must be nonnegative");
        if (__builtin_add_overflow(total, w.value(), &total)) throw PreconditionViolation("weights too large");
        out.push_back(w.value());
    }
    // Every level is < n, so every cost is bounded by total * n.
    const auto n = static_cast<std::int64_t>(weights.size());
    if (total > 0 && total > std::numeric_limits<std::int64_t>::max() / (n + 1))
        throw PreconditionViolation("weights too large for exact 64-bit costs");
    return out;
}

WeightSeq to_weight_seq(std::span<const std::int64_t> values) {
    return WeightSeq(values.begin(), values.end());
}

} // namespace alphatree
