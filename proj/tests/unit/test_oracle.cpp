#include "helpers.hpp"

#include "alphatree/error.hpp"
#include "alphatree/oracle.hpp"

#include <doctest.h>

using namespace alphatree;
using test_support::ws;

namespace {

// Number of ordered trees over n leaves with the allowed arities.
std::size_t shape_count(std::size_t n, AritySet arity) {
    std::vector<std::size_t> t(n + 1, 0);
    t[1] = 1;
    for (std::size_t m = 2; m <= n; ++m) {
        for (std::size_t a = 1; a < m; ++a) {
            if (arity.two) t[m] += t[a] * t[m - a];
            if (arity.three)
                for (std::size_t b = 1; a + b < m; ++b) t[m] += t[a] * t[b] * t[m - a - b];
        }
    }
    return t[n];
}

} // namespace

TEST_CASE("dp examples") {
    CHECK(dp_optimal(ws({4, 2, 3, 4}), binary_arity).cost == 26);
    CHECK(to_nested_string(dp_optimal(ws({4, 2, 3, 4}), binary_arity).tree) == "((4,2),(3,4))");
    const DpResult knuth = dp_optimal(ws({1, 1, 100, 1, 1}), mixed_arity);
    CHECK(knuth.cost == 108);
    CHECK(to_nested_string(knuth.tree) == "((1,1),100,(1,1))");
    CHECK(dp_optimal(ws(test_support::seven), pure_ternary_arity).cost == 62);
    CHECK(dp_optimal(ws(test_support::fifteen), pure_ternary_arity).cost == 197);
    CHECK(dp_optimal(ws(test_support::fifteen), mixed_arity).cost == 197);
    CHECK(dp_optimal(ws({1, 1, 100, 100, 1, 1}), mixed_arity).cost == 308);
    CHECK(dp_optimal(ws({7}), pure_ternary_arity).cost == 0);
    CHECK_THROWS_AS(dp_optimal(ws({1, 2}), pure_ternary_arity), Infeasible);
    CHECK_THROWS_AS(dp_optimal(ws({1, 2, 3, 4}), pure_ternary_arity), Infeasible);
    CHECK_THROWS_AS(dp_optimal(ws({1, 2}), AritySet{}), PreconditionViolation);
}

TEST_CASE("dp trees respect the arity set") {
    std::mt19937_64 rng(81);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 1 + rng() % 20;
        const auto w = test_support::random_weights(rng, n, 0, 50);
        for (const AritySet a : {binary_arity, mixed_arity, pure_ternary_arity}) {
            if (a == pure_ternary_arity && n % 2 == 0) continue;
            const DpResult r = dp_optimal(ws(w), a);
            CHECK(is_alphabetic(r.tree));
            CHECK(tree_cost(r.tree, ws(w)) == r.cost);
            const ArityCounts c = arity_counts(r.tree.forest());
            if (!a.two) CHECK(c.binary == 0);
            if (!a.three) CHECK(c.ternary == 0);
            CHECK(c.other == 0);
        }
    }
}

TEST_CASE("exhaustive examples") {
    const auto two = exhaustive_optimal(ws({1, 1}), mixed_arity);
    CHECK(two.cost == 2);
    CHECK(two.optimal_count == 1);
    CHECK(exhaustive_optimal(ws({1, 1, 100, 1, 1}), mixed_arity).cost == 108);
    CHECK(exhaustive_optimal(ws({4, 2, 3, 4}), binary_arity).cost == 26);
    CHECK(exhaustive_optimal(ws({4, 2, 3, 4}), binary_arity).cost == dp_optimal(ws({4, 2, 3, 4}), binary_arity).cost);
    CHECK_THROWS_AS(exhaustive_optimal(ws(std::vector<std::int64_t>(12, 1)), mixed_arity), RefusedSize);
    CHECK_THROWS_AS(exhaustive_optimal(ws({1, 1}), pure_ternary_arity), Infeasible);
}

TEST_CASE("exhaustive enumeration visits every shape") {
    for (std::size_t n = 1; n <= 9; ++n) {
        const std::vector<std::int64_t> w(n, 1);
        for (const AritySet a : {binary_arity, mixed_arity, pure_ternary_arity}) {
            if (a == pure_ternary_arity && n % 2 == 0) continue;
            CHECK(exhaustive_optimal(ws(w), a).tree_count == shape_count(n, a));
        }
    }
}

TEST_CASE("dp agrees with enumeration") {
    std::mt19937_64 rng(82);
    for (int round = 0; round < 150; ++round) {
        const std::size_t n = 1 + rng() % 8;
        const auto w = test_support::random_weights(rng, n, 0, 9);
        for (const AritySet a : {binary_arity, mixed_arity, pure_ternary_arity}) {
            if (a == pure_ternary_arity && n % 2 == 0) continue;
            CHECK(dp_optimal(ws(w), a).cost == exhaustive_optimal(ws(w), a).cost);
        }
    }
}

TEST_CASE("appending a leaf never lowers the mixed optimum") {
    std::mt19937_64 rng(83);
    for (int round = 0; round < 100; ++round) {
        auto w = test_support::random_weights(rng, 1 + rng() % 10, 0, 30);
        const Weight before = dp_optimal(ws(w), mixed_arity).cost;
        w.push_back(1 + static_cast<std::int64_t>(rng() % 30));
        CHECK(dp_optimal(ws(w), mixed_arity).cost >= before);
    }
}
