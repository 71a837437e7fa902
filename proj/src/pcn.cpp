#include "alphatree/pcn.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

namespace alphatree {

namespace {

struct Span {
    std::size_t first, last;
    std::int64_t total;
};

// spans sorted by (first asc, last desc): parents come before their children.
std::vector<PcnNode> nest(const std::vector<Span>& spans, std::size_t& at, std::size_t limit) {
    std::vector<PcnNode> out;
    while (at < spans.size() && spans[at].last <= limit) {
        const Span s = spans[at++];
        PcnNode node{s.first, s.last, Weight(s.total), {}};
        node.children = nest(spans, at, s.last);
        out.push_back(std::move(node));
    }
    return out;
}

} // namespace

std::vector<PcnNode> detect_pcns(const WeightSeq& weights) {
    const auto w = finite_weights(weights);
    const std::size_t n = w.size();
    std::vector<std::int64_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + w[i];

    std::vector<Span> spans;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const std::int64_t s = prefix[j + 1] - prefix[i];
            const bool left_ok = i == 0 || w[i - 1] > s;
            const bool right_ok = j == n - 1 || w[j + 1] > s;
            if (left_ok && right_ok) spans.push_back({i, j, s});
        }
    }
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
        return std::tie(a.first, b.last) < std::tie(b.first, a.last);
    });
    std::size_t at = 0;
    return nest(spans, at, n);
}

} // namespace alphatree
