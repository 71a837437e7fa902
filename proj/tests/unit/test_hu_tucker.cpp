#include "helpers.hpp"

#include "alphatree/hu_tucker.hpp"
#include "alphatree/level_phases.hpp"
#include "alphatree/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <tuple>

using namespace alphatree;
using test_support::increments;
using test_support::ws;

namespace {

std::vector<SeqNode> squares(std::initializer_list<std::int64_t> w) {
    std::vector<SeqNode> out;
    std::size_t i = 0;
    for (const auto x : w) {
        out.push_back({i + 1, SeqKind::square, x, i});
        ++i;
    }
    return out;
}

// Phase I straight from the definition: scan every compatible pair.
std::vector<std::int64_t> brute_phase1(const std::vector<std::int64_t>& w) {
    std::vector<SeqNode> seq;
    for (std::size_t i = 0; i < w.size(); ++i) seq.push_back({i, SeqKind::square, w[i], i});
    std::vector<std::int64_t> out;
    std::size_t next_id = w.size();
    while (seq.size() > 1) {
        const auto pairs = compatible_pairs(seq);
        auto find = [&](std::size_t id) {
            return std::find_if(seq.begin(), seq.end(), [&](const SeqNode& s) { return s.id == id; });
        };
        std::tuple<std::int64_t, std::size_t, std::size_t> best{-1, 0, 0};
        std::pair<std::size_t, std::size_t> pick;
        for (const auto& [a, b] : pairs) {
            const auto key = std::make_tuple((find(a)->weight + find(b)->weight).value(), find(a)->position, find(b)->position);
            if (std::get<0>(best) < 0 || key < best) {
                best = key;
                pick = {a, b};
            }
        }
        out.push_back(std::get<0>(best));
        const std::size_t pos = find(pick.first)->position;
        seq.erase(find(pick.second));
        *find(pick.first) = {next_id++, SeqKind::circle, std::get<0>(best), pos};
    }
    return out;
}

} // namespace

TEST_CASE("compatible pairs") {
    using P = std::vector<std::pair<std::size_t, std::size_t>>;
    CHECK(compatible_pairs(squares({4, 2, 3, 4})) == P{{1, 2}, {2, 3}, {3, 4}});

    std::vector<SeqNode> mixed{{1, SeqKind::square, 4, 0}, {2, SeqKind::circle, 5, 1}, {3, SeqKind::square, 3, 2}};
    auto pairs = compatible_pairs(mixed);
    std::sort(pairs.begin(), pairs.end());
    CHECK(pairs == P{{1, 2}, {1, 3}, {2, 3}});

    // after the first combination of {4,2,3,4}: the two 4s become a cross pair
    std::vector<SeqNode> after{{1, SeqKind::square, 4, 0}, {5, SeqKind::circle, 5, 1}, {4, SeqKind::square, 4, 3}};
    const auto ap = compatible_pairs(after);
    CHECK(std::find(ap.begin(), ap.end(), std::make_pair<std::size_t, std::size_t>(1, 4)) != ap.end());
}

TEST_CASE("binary phase I step weights") {
    CHECK(increments(phase1_combine_binary(ws({4, 2, 3, 4}))) == std::vector<std::int64_t>{5, 8, 13});
    CHECK(increments(phase1_combine_binary(ws({1, 1}))) == std::vector<std::int64_t>{2});
    CHECK(increments(phase1_combine_binary(ws({1, 2, 3}))) == std::vector<std::int64_t>{3, 6});
    CHECK(phase1_combine_binary(ws({5})).size() == 0);
    CHECK_THROWS(phase1_combine_binary({}));
}

TEST_CASE("hu_tucker worked example") {
    const SolveReport r = hu_tucker(ws({4, 2, 3, 4}));
    CHECK(r.cost == 26);
    CHECK(r.levels == LevelSeq{2, 2, 2, 2});
    CHECK(to_nested_string(r.tree) == "((4,2),(3,4))");
    CHECK(r.trace.total_increment() == 26);

    const SolveReport single = hu_tucker(ws({5}));
    CHECK(single.cost == 0);
    CHECK(single.levels == LevelSeq{0});
}

TEST_CASE("windowed phase I matches the all-pairs definition") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 400; ++round) {
        const std::size_t n = 1 + rng() % 14;
        const auto w = test_support::random_weights(rng, n, round % 3 == 0 ? 0 : 1, round % 2 ? 5 : 40);
        CHECK(increments(phase1_combine_binary(ws(w))) == brute_phase1(w));
    }
}

TEST_CASE("hu_tucker equals the binary DP optimum") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 1 + rng() % 12;
        const auto w = test_support::random_weights(rng, n, 0, 30);
        const SolveReport r = hu_tucker(ws(w));
        CHECK(r.cost == dp_optimal(ws(w), binary_arity).cost);
        CHECK(r.cost == r.trace.total_increment());
        CHECK(is_alphabetic(r.tree));
        CHECK(r.levels == leaf_levels(r.tree));
    }
}

TEST_CASE("stopping phase I early leaves a cross-over free k-sum forest") {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 2 + rng() % 10;
        const auto w = test_support::random_weights(rng, n, 1, 25);
        const CombinationTrace full = phase1_combine_binary(ws(w));
        for (std::size_t k = 0; k <= full.size(); ++k) {
            const CombinationTrace prefix = full.prefix(k);
            const Forest f = reconstruct_forest_from_levels(signed_levels(prefix), ws(w), TreeMode::binary);
            CHECK(f.internal_count() == k);
            CHECK(is_alphabetic(f));
            CHECK(forest_cost(f, ws(w)) == prefix.total_increment());
        }
    }
}
