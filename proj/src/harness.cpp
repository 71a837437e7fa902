#include "alphatree/harness.hpp"

#include "alphatree/error.hpp"
#include "alphatree/general_solver.hpp"
#include "alphatree/hu_tucker.hpp"
#include "alphatree/oracle.hpp"
#include "alphatree/ternary_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace alphatree {

std::optional<Distribution> distribution_from_string(std::string_view text) {
    if (text == "uniform") return Distribution::uniform;
    if (text == "monotone") return Distribution::monotone;
    if (text == "paper-family") return Distribution::worked_examples;
    return std::nullopt;
}

std::string_view to_string(Distribution dist) noexcept {
    switch (dist) {
    case Distribution::monotone:
        return "monotone";
    case Distribution::worked_examples:
        return "paper-family";
    case Distribution::uniform:
        break;
    }
    return "uniform";
}

bool pcn_free(std::span<const std::int64_t> w) {
    const std::size_t n = w.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::int64_t pair = w[i] + w[i + 1];
        const bool left = i == 0 || w[i - 1] <= pair;
        const bool right = i + 2 >= n || pair >= w[i + 2];
        if (!left && !right) return false;
    }
    return true;
}

const std::vector<std::vector<std::int64_t>>& worked_examples() {
    static const std::vector<std::vector<std::int64_t>> family{
        {4, 2, 3, 4},
        {1, 1, 100, 1, 1},
        {1, 1, 1, 100, 1, 1},
        {1, 1, 100, 100, 1, 1},
        {6, 6, 1, 10, 1, 6, 6},
        {5, 5, 6, 6, 1, 10, 1, 11, 1, 10, 1, 6, 6, 5, 5},
    };
    return family;
}

namespace {

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

constexpr std::size_t max_rejections = 100000;

} // namespace

std::vector<std::vector<std::int64_t>> generate_instances(const InstanceSpec& spec) {
    if (spec.dist == Distribution::worked_examples) return worked_examples();
    if (spec.n_min == 0 || spec.n_min > spec.n_max) throw PreconditionViolation("bad instance size range");
    if (spec.weight_min < 0 || spec.weight_min > spec.weight_max) throw PreconditionViolation("bad weight range");

    std::vector<std::size_t> sizes;
    for (std::size_t n = spec.n_min; n <= spec.n_max; ++n)
        if (!spec.odd_only || n % 2 == 1) sizes.push_back(n);
    if (sizes.empty()) throw PreconditionViolation("no instance size satisfies the filters");

    std::mt19937_64 rng(spec.seed);
    std::vector<std::vector<std::int64_t>> out;
    for (std::size_t k = 0; k < spec.count; ++k) {
        const std::size_t n = sizes[rng() % sizes.size()];
        std::vector<std::int64_t> w(n);
        for (std::size_t tries = 0;; ++tries) {
            if (tries == max_rejections) throw PreconditionViolation("PCN-free rejection sampling did not converge");
            for (auto& x : w) x = draw(rng, spec.weight_min, spec.weight_max);
            if (spec.dist == Distribution::monotone) {
                std::sort(w.begin(), w.end());
                for (std::size_t i = 1; i < n; ++i) w[i] = std::max(w[i], w[i - 1] + 1);
            }
            if (!spec.pcn_free || pcn_free(w)) break;
        }
        out.push_back(std::move(w));
    }
    return out;
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::string> check_report(const SolveReport& report, const WeightSeq& weights, bool pure) {
    std::vector<std::string> bad;
    const Forest& f = report.tree.forest();
    if (!is_alphabetic(report.tree)) bad.push_back("tree is not alphabetic");
    if (tree_cost(report.tree, weights) != internal_weight_sum(f)) bad.push_back("cost identity fails");
    if (report.cost != report.trace.total_increment()) bad.push_back("cost differs from the sum of increments");
    try {
        check_increments(report.trace, weights);
    } catch (const TraceError& e) {
        bad.push_back(e.what());
    }
    if (leaf_levels(report.tree) != report.levels) bad.push_back("trace levels differ from tree levels");
    const ArityCounts arity = arity_counts(f);
    if (arity.other != 0) bad.push_back("internal node with arity other than 2 or 3");
    if (pure && arity.binary != 0) bad.push_back("binary node in a pure ternary tree");
    if (arity.binary % 2 != (weights.size() - 1) % 2) bad.push_back("binary node count has the wrong parity");
    if (report.oracle_cost && report.cost < *report.oracle_cost) bad.push_back("engine beats the oracle");
    return bad;
}

FuzzResult fuzz_compare(const std::vector<std::vector<std::int64_t>>& instances, EngineKind engine) {
    FuzzResult result;
    std::string ledger;
    for (const auto& w : instances) {
        const WeightSeq weights = to_weight_seq(w);
        ++result.summary.instances;
        std::string label = "[";
        for (std::size_t i = 0; i < w.size(); ++i) label += (i ? "," : "") + std::to_string(w[i]);
        label += "]";
        try {
            SolveReport report;
            if (engine == EngineKind::general) {
                report = general_solve(weights);
            } else {
                report = pure_ternary_solve(weights);
                report.oracle_cost = dp_optimal(weights, pure_ternary_arity).cost;
            }
            for (auto& msg : check_report(report, weights, engine == EngineKind::pure_ternary))
                result.violations.push_back(label + ": " + msg);
            const std::int64_t cost = report.cost.value();
            const std::int64_t oracle = report.oracle_cost->value();
            const std::string digest = fnv1a_hex(trace_to_json(report.trace).dump());
            ledger += label + ' ' + std::to_string(cost) + ' ' + std::to_string(oracle) + ' ' + digest + '\n';
            if (cost == oracle) {
                ++result.summary.equal;
            } else {
                ++result.summary.divergences;
                result.summary.max_gap = std::max(result.summary.max_gap, cost - oracle);
                result.records.push_back({w, cost, oracle, cost - oracle, digest});
            }
        } catch (const std::exception& e) {
            result.violations.push_back(label + ": " + e.what());
            ledger += label + " error\n";
        }
    }
    result.summary.invariant_violations = result.violations.size();
    result.summary.digest = fnv1a_hex(ledger);
    return result;
}

FuzzResult fuzz_compare(const InstanceSpec& spec, EngineKind engine) {
    return fuzz_compare(generate_instances(spec), engine);
}

json to_json(const DivergenceRecord& r) {
    return {{"weights", r.weights},
            {"engine_cost", r.engine_cost},
            {"oracle_cost", r.oracle_cost},
            {"gap", r.gap},
            {"trace_digest", r.trace_digest}};
}

json to_json(const FuzzSummary& s) {
    return {{"instances", s.instances},
            {"equal", s.equal},
            {"divergences", s.divergences},
            {"equality_rate", s.equality_rate()},
            {"max_gap", s.max_gap},
            {"invariant_violations", s.invariant_violations},
            {"digest", s.digest}};
}

namespace {

std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& [x, y] : pts)
        if (x > 1 && y > 0) xy.emplace_back(std::log(x), std::log(y));
    if (xy.size() < 2) return std::nullopt;
    double mx = 0, my = 0;
    for (const auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(xy.size());
    my /= static_cast<double>(xy.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) return std::nullopt;
    return sxy / sxx;
}

template <typename T>
T median(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

} // namespace

BenchReport bench_growth(const BenchSpec& spec) {
    if (spec.repeats == 0) throw PreconditionViolation("bench needs at least one repeat");
    BenchReport report;
    std::mt19937_64 rng(spec.seed);
    for (const std::size_t n : spec.ns) {
        if (n == 0) throw PreconditionViolation("bench sizes must be positive");
        if (spec.engine == BenchEngine::ternary && n % 2 == 0)
            throw PreconditionViolation("the ternary engine needs an odd number of leaves");
        std::vector<std::int64_t> times;
        std::vector<std::size_t> steps, candidates;
        for (std::size_t r = 0; r < spec.repeats; ++r) {
            std::vector<std::int64_t> w(n);
            for (auto& x : w) x = draw(rng, 1, spec.weight_max);
            const WeightSeq weights = to_weight_seq(w);
            EngineStats stats;
            const auto start = std::chrono::steady_clock::now();
            if (spec.engine == BenchEngine::ternary) pure_ternary_phase1(weights, std::nullopt, &stats);
            else phase1_combine_binary(weights, &stats);
            const auto stop = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
            steps.push_back(stats.steps);
            candidates.push_back(stats.candidates);
        }
        report.rows.push_back({n, median(times), median(steps), median(candidates)});
    }
    std::vector<std::pair<double, double>> t, c;
    for (const auto& row : report.rows) {
        t.emplace_back(static_cast<double>(row.n), static_cast<double>(row.median_ns));
        c.emplace_back(static_cast<double>(row.n), static_cast<double>(row.candidates));
    }
    report.time_slope = loglog_slope(t);
    report.candidate_slope = loglog_slope(c);
    return report;
}

std::string bench_csv(const BenchReport& report) {
    std::ostringstream os;
    os << "n,median_ns,steps,candidates\n";
    for (const auto& row : report.rows) os << row.n << ',' << row.median_ns << ',' << row.steps << ',' << row.candidates << '\n';
    return os.str();
}

} // namespace alphatree
