#include "helpers.hpp"

#include "alphatree/error.hpp"
#include "alphatree/level_phases.hpp"
#include "alphatree/oracle.hpp"
#include "alphatree/ternary_engine.hpp"

#include <doctest.h>

#include <algorithm>

using namespace alphatree;
using test_support::increments;
using test_support::ws;

namespace {

EngineState run(const std::vector<std::int64_t>& w, std::size_t k) {
    EngineState st(w);
    for (std::size_t i = 0; i < k; ++i) st.step();
    return st;
}

std::vector<std::size_t> negative_leaves(const EngineState& st) {
    std::vector<std::size_t> out;
    for (const auto& n : st.available_negatives()) out.push_back(n.leaf);
    return out;
}

std::int64_t plain_minimum(const std::vector<Candidate>& cs) {
    std::int64_t best = -1;
    for (const auto& c : cs)
        if (c.middle.is_single() && (best < 0 || c.weight < best)) best = c.weight;
    return best;
}

bool same_choice(const Candidate& a, const Candidate& b) { return !selected_before(a, b) && !selected_before(b, a); }

} // namespace

TEST_CASE("7-node increments") {
    CHECK(increments(pure_ternary_phase1(ws(test_support::seven))) == std::vector<std::int64_t>{12, 14, 36});
    CHECK(increments(pure_ternary_phase1(ws({1, 2, 3}))) == std::vector<std::int64_t>{6});
    CHECK(pure_ternary_phase1(ws({4})).size() == 0);
    CHECK_THROWS_AS(pure_ternary_phase1(ws({1, 2})), PreconditionViolation);
    CHECK_THROWS_AS(pure_ternary_phase1({}), PreconditionViolation);
}

TEST_CASE("7-node after the first combination") {
    const EngineState st = run(test_support::seven, 1);
    const auto negs = st.available_negatives();
    REQUIRE(negs.size() == 1);
    CHECK(negs[0] == NegativeSlot{3, 10, 0});

    const auto cs = st.enumerate_candidates();
    REQUIRE(!cs.empty());
    CHECK(describe(cs.front()) == "(6, (+6, -10, +6), 6) = 14");
    // (6,6,6) skipping circle 12 is compatible: no square lies between its members.
    CHECK(plain_minimum(cs) == 18);
}

TEST_CASE("7-node final combination uses both circles and the reappeared square") {
    const CombinationTrace t = pure_ternary_phase1(ws(test_support::seven));
    const auto& last = t.steps().back().participants;
    REQUIRE(last.size() == 3);
    CHECK(last[0].ref == NodeRef::circle(1));
    CHECK(last[1].ref == NodeRef::circle(0));
    CHECK(last[2].ref == NodeRef::leaf(3));
    const auto& acc = t.steps()[1];
    REQUIRE(acc.accordion_span);
    CHECK(*acc.accordion_span == std::make_pair<std::size_t, std::size_t>(1, 5));
    CHECK(acc.participants[2].sign == -1);
    CHECK(acc.participants[2].role == Role::accordion);
    CHECK(acc.participants[0].role == Role::outer);
}

TEST_CASE("15-node available negatives") {
    CHECK(negative_leaves(run(test_support::fifteen, 2)) == std::vector<std::size_t>{5, 9});
    CHECK(negative_leaves(run(test_support::fifteen, 3)) == std::vector<std::size_t>{3, 7, 11});
}

TEST_CASE("15-node accordion candidates") {
    const auto c2 = run(test_support::fifteen, 2).enumerate_candidates();
    CHECK(describe(c2.front()) == "(6, (+6, -10, +11, -10, +6), 6) = 15");
    CHECK(c2.front().middle.weight == 3);
    const auto c3 = run(test_support::fifteen, 3).enumerate_candidates();
    CHECK(describe(c3.front()) == "(5, (+5, -6, +10, -11, +10, -6, +5), 5) = 17");
    CHECK(c3.front().middle.weight == 7);
}

TEST_CASE("15-node run and endgame queue") {
    const CombinationTrace t = pure_ternary_phase1(ws(test_support::fifteen));
    CHECK(increments(t) == std::vector<std::int64_t>{12, 12, 15, 17, 23, 39, 79});
    CHECK(t.total_increment() == 197);
    for (std::size_t k = 5; k < 7; ++k)
        for (const auto& p : t.steps()[k].participants) CHECK(p.ref.kind == RefKind::circle);
    auto weights_of = [&](std::size_t k) {
        std::vector<std::int64_t> out;
        for (const auto& p : t.steps()[k].participants) out.push_back(t.steps()[p.ref.index].increment.value());
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(weights_of(5) == std::vector<std::int64_t>{12, 12, 15});
    CHECK(weights_of(6) == std::vector<std::int64_t>{17, 23, 39});

    const SolveReport r = pure_ternary_solve(ws(test_support::fifteen));
    CHECK(r.cost == 197);
    CHECK(r.levels == LevelSeq{2, 2, 3, 3, 3, 2, 3, 3, 3, 2, 3, 3, 3, 2, 2});
    CHECK(to_nested_string(r.tree) == "((5,5,(6,6,1)),(10,(1,11,1),10),((1,6,6),5,5))");
}

TEST_CASE("every step leaves a valid forest costing the running sum") {
    std::mt19937_64 rng(44);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 1 + 2 * (rng() % 7);
        const auto w = test_support::random_weights(rng, n, round % 5 == 0 ? 0 : 1, round % 2 ? 6 : 30);
        EngineState st(w);
        std::int64_t running = 0;
        while (!st.finished()) {
            const auto all = st.enumerate_candidates();
            const auto first_valid = std::find_if(all.begin(), all.end(), [&](const Candidate& c) { return st.is_valid(c); });
            const Candidate pick = st.select();
            REQUIRE(first_valid != all.end());
            CHECK(same_choice(pick, *first_valid));
            st.apply(pick);
            running += pick.weight;

            const CombinationTrace tr = st.trace();
            CHECK(st.levels() == signed_levels(tr));
            CHECK(is_pure_ternary_forest(st.levels()));
            const Forest f = reconstruct_from_trace(tr, ws(w));
            CHECK(is_alphabetic(f));
            CHECK(forest_cost(f, ws(w)) == running);
            CHECK(f.internal_count() == tr.size());
        }
        CHECK(st.trace().size() == (n - 1) / 2);
    }
}

TEST_CASE("pure engine against the pure ternary DP") {
    std::mt19937_64 rng(45);
    std::size_t equal = 0, total = 0;
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 1 + 2 * (rng() % 6);
        const auto w = test_support::random_weights(rng, n, 1, 20);
        const SolveReport r = pure_ternary_solve(ws(w));
        const Weight opt = dp_optimal(ws(w), pure_ternary_arity).cost;
        CHECK(r.cost >= opt);
        ++total;
        if (r.cost == opt) ++equal;
        CHECK(arity_counts(r.tree.forest()).binary == 0);
    }
    MESSAGE("pure engine equal to DP on " << equal << " of " << total);
}

TEST_CASE("run_ternary_phase1 stops after the requested steps") {
    EngineStats stats;
    const auto t = run_ternary_phase1(test_support::fifteen, 3, &stats);
    CHECK(t.size() == 3);
    CHECK(stats.steps == 3);
    CHECK(stats.candidates > 0);
    CHECK_THROWS_AS(run_ternary_phase1(std::vector<std::int64_t>{1, 2, 3}, 2), PreconditionViolation);
}
