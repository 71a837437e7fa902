#pragma once

#include "alphatree/trace.hpp"
#include "alphatree/tree.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace test_support {

inline alphatree::WeightSeq ws(std::initializer_list<std::int64_t> values) {
    return alphatree::WeightSeq(values.begin(), values.end());
}

inline alphatree::WeightSeq ws(const std::vector<std::int64_t>& values) {
    return alphatree::WeightSeq(values.begin(), values.end());
}

inline std::vector<std::int64_t> increments(const alphatree::CombinationTrace& trace) {
    std::vector<std::int64_t> out;
    for (const auto& step : trace.steps()) out.push_back(step.increment.value());
    return out;
}

inline std::vector<std::int64_t> random_weights(std::mt19937_64& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> w(n);
    for (auto& x : w) x = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    return w;
}

inline const std::vector<std::int64_t> seven{6, 6, 1, 10, 1, 6, 6};
inline const std::vector<std::int64_t> fifteen{5, 5, 6, 6, 1, 10, 1, 11, 1, 10, 1, 6, 6, 5, 5};

} // namespace test_support
