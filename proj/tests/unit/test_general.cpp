#include "helpers.hpp"

#include "alphatree/general_solver.hpp"
#include "alphatree/oracle.hpp"
#include "alphatree/parity.hpp"
#include "alphatree/pcn.hpp"

#include <doctest.h>

#include <algorithm>

using namespace alphatree;
using test_support::ws;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> top_spans(const std::vector<PcnNode>& nodes) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& p : nodes) out.emplace_back(p.first, p.last);
    return out;
}

using Spans = std::vector<std::pair<std::size_t, std::size_t>>;

} // namespace

TEST_CASE("permanent circular node detection") {
    CHECK(top_spans(detect_pcns(ws({1, 1, 100, 1, 1}))) == Spans{{0, 1}, {3, 4}});
    CHECK(detect_pcns(ws(test_support::seven)).empty());
    CHECK(top_spans(detect_pcns(ws({1, 1, 100, 100, 1, 1}))) == Spans{{0, 1}, {4, 5}});
    CHECK(detect_pcns(ws({5})).empty());
    CHECK(detect_pcns(ws({1, 1})).empty()); // the whole sequence is not a PCN

    const auto nested = detect_pcns(ws({100, 1, 1, 50, 100, 7}));
    REQUIRE(nested.size() == 1);
    CHECK(nested[0].first == 1);
    CHECK(nested[0].last == 3);
    CHECK(nested[0].total_weight == 52);
    CHECK(top_spans(nested[0].children) == Spans{{1, 2}});
}

TEST_CASE("PCN spans satisfy the inequality and nest") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 300; ++round) {
        const auto w = test_support::random_weights(rng, 1 + rng() % 12, 1, 40);
        auto check = [&](auto&& self, const std::vector<PcnNode>& nodes, std::size_t lo, std::size_t hi) -> void {
            std::size_t prev_end = lo;
            bool first = true;
            for (const auto& p : nodes) {
                CHECK(p.first >= lo);
                CHECK(p.last <= hi);
                CHECK(p.last > p.first);
                if (!first) CHECK(p.first > prev_end);
                first = false;
                prev_end = p.last;
                std::int64_t s = 0;
                for (std::size_t i = p.first; i <= p.last; ++i) s += w[i];
                CHECK(p.total_weight == s);
                if (p.first > 0) CHECK(w[p.first - 1] > s);
                if (p.last + 1 < w.size()) CHECK(w[p.last + 1] > s);
                self(self, p.children, p.first, p.last);
            }
        };
        check(check, detect_pcns(ws(w)), 0, w.size() - 1);
    }
}

TEST_CASE("parity plans") {
    const UnitDescriptor pcn2{UnitKind::pcn, 2}, sq100{UnitKind::square, 100};
    using A = std::vector<ParityAction>;
    CHECK(parity_plan(std::vector<UnitDescriptor>{pcn2, sq100, pcn2}) == A{{ParityKind::all_ternary, 0}});
    CHECK(parity_plan(std::vector<UnitDescriptor>{pcn2, sq100, sq100, pcn2}) ==
          A{{ParityKind::split_pcn, 0}, {ParityKind::split_pcn, 3}, {ParityKind::binary_pair, 1}});
    const std::vector<UnitDescriptor> mono{{UnitKind::square, 1}, {UnitKind::square, 2}, {UnitKind::square, 3}, {UnitKind::square, 4}};
    CHECK(parity_plan(mono) == A{{ParityKind::binary_pair, 0}});
    const std::vector<UnitDescriptor> ties{{UnitKind::square, 1}, {UnitKind::square, 1}, {UnitKind::square, 5}, {UnitKind::square, 1}, {UnitKind::square, 1}, {UnitKind::square, 9}};
    CHECK(parity_plan(ties, 1) == A{{ParityKind::binary_pair, 0}, {ParityKind::binary_pair, 3}});
    CHECK(parity_plan(ties, 2) == A{{ParityKind::all_ternary, 0}});
}

TEST_CASE("general solve on the worked sequences") {
    const SolveReport knuth = general_solve(ws({1, 1, 100, 1, 1}));
    CHECK(knuth.cost == 108);
    CHECK(to_nested_string(knuth.tree) == "((1,1),100,(1,1))");
    CHECK(knuth.oracle_cost == Weight(108));

    const SolveReport split = general_solve(ws({1, 1, 100, 100, 1, 1}));
    CHECK(split.cost == 308);
    CHECK(to_nested_string(split.tree) == "((1,1,100),100,(1,1))");

    const SolveReport seven = general_solve(ws(test_support::seven));
    CHECK(seven.cost == 62);
    CHECK(seven.levels == LevelSeq{2, 2, 2, 1, 2, 2, 2});

    CHECK(general_solve(ws({1, 1, 1, 100, 1, 1})).cost == 110);
    CHECK(general_solve(ws({4, 2, 3, 4})).cost == 18);
    CHECK(general_solve(ws(test_support::fifteen)).cost == 197);
    CHECK(general_solve(ws({9})).cost == 0);
    CHECK(to_nested_string(general_solve(ws({3, 4})).tree) == "(3,4)");
    CHECK_THROWS(general_solve({}));
}

TEST_CASE("monotone even sequences get one bottom pair of the two smallest") {
    std::mt19937_64 rng(71);
    for (int round = 0; round < 120; ++round) {
        const std::size_t n = 4 + 2 * (rng() % 3);
        auto w = test_support::random_weights(rng, n, 1, 60);
        std::sort(w.begin(), w.end());
        for (std::size_t i = 1; i < n; ++i) w[i] = std::max(w[i], w[i - 1] + 1);
        const SolveReport r = general_solve(ws(w), {false});
        const Forest& f = r.tree.forest();
        std::size_t binary = 0;
        for (const auto& nd : f.nodes()) {
            if (nd.children.size() != 2) continue;
            ++binary;
            CHECK(f.node(nd.children[0]).is_leaf());
            CHECK(f.node(nd.children[1]).is_leaf());
            CHECK(f.node(nd.children[0]).leaf_index == 0);
            CHECK(f.node(nd.children[1]).leaf_index == 1);
        }
        CHECK(binary == 1);
    }
}

TEST_CASE("general solve invariants on random input") {
    std::mt19937_64 rng(72);
    std::size_t equal = 0;
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 1 + rng() % 12;
        const auto w = test_support::random_weights(rng, n, 1, 30);
        const SolveReport r = general_solve(ws(w));
        REQUIRE(r.oracle_cost);
        CHECK(r.cost >= *r.oracle_cost);
        if (r.cost == *r.oracle_cost) ++equal;
        CHECK(is_alphabetic(r.tree));
        CHECK(r.cost == r.trace.total_increment());
        CHECK(r.levels == leaf_levels(r.tree));
        CHECK(arity_counts(r.tree.forest()).binary % 2 == (n - 1) % 2);
        CHECK_NOTHROW(check_increments(r.trace, ws(w)));
        for (const auto& step : r.trace.steps())
            for (const auto& p : step.participants)
                if (p.sign < 0) CHECK(p.ref.kind == RefKind::leaf);
    }
    MESSAGE("general solve equal to DP on " << equal << " of 300");
}
