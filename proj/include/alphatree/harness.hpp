#pragma once

#include "alphatree/serialize.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace alphatree {

enum class Distribution { uniform, monotone, worked_examples };

std::optional<Distribution> distribution_from_string(std::string_view text);
std::string_view to_string(Distribution dist) noexcept;

struct InstanceSpec {
    std::size_t n_min = 1;
    std::size_t n_max = 11;
    Distribution dist = Distribution::uniform;
    std::int64_t weight_min = 1;
    std::int64_t weight_max = 20;
    bool pcn_free = false; // reject sequences that contain a permanent circular node candidate
    bool odd_only = false;
    std::uint64_t seed = 0;
    std::size_t count = 100;
};

/// Deterministic for a given InstanceSpec. worked_examples ignores n, seed and count.
std::vector<std::vector<std::int64_t>> generate_instances(const InstanceSpec& spec);

/// For every adjacent pair: w[i-1] <= w[i] + w[i+1] or w[i] + w[i+1] >= w[i+2],
/// with negative infinity beyond the ends.
bool pcn_free(std::span<const std::int64_t> weights);

/// The worked sequences used throughout the tests.
const std::vector<std::vector<std::int64_t>>& worked_examples();

enum class EngineKind { general, pure_ternary };

struct DivergenceRecord {
    std::vector<std::int64_t> weights;
    std::int64_t engine_cost = 0;
    std::int64_t oracle_cost = 0;
    std::int64_t gap = 0; // engine - oracle
    std::string trace_digest;
};

struct FuzzSummary {
    std::size_t instances = 0;
    std::size_t equal = 0;
    std::size_t divergences = 0;
    std::size_t invariant_violations = 0;
    std::int64_t max_gap = 0;
    std::string digest; // over every instance's costs and trace digest, in order

    double equality_rate() const noexcept { return instances ? static_cast<double>(equal) / static_cast<double>(instances) : 1.0; }
};

struct FuzzResult {
    FuzzSummary summary;
    std::vector<DivergenceRecord> records;
    std::vector<std::string> violations; // one line per failed invariant
};

/// Solves every instance with the engine and the DP oracle (mixed arities for
/// the general solver, pure ternary otherwise) and checks the output invariants.
FuzzResult fuzz_compare(const InstanceSpec& spec, EngineKind engine = EngineKind::general);
FuzzResult fuzz_compare(const std::vector<std::vector<std::int64_t>>& instances, EngineKind engine = EngineKind::general);

/// Checks the structural invariants of one report; returns one message per failure.
std::vector<std::string> check_report(const SolveReport& report, const WeightSeq& weights, bool pure);

std::string fnv1a_hex(std::string_view text);

json to_json(const DivergenceRecord& record);
json to_json(const FuzzSummary& summary);

enum class BenchEngine { ternary, binary };

struct BenchSpec {
    std::vector<std::size_t> ns{101, 201, 401, 801};
    std::uint64_t seed = 1;
    std::size_t repeats = 5;
    std::int64_t weight_max = 1000;
    BenchEngine engine = BenchEngine::ternary;
};

struct BenchRow {
    std::size_t n = 0;
    std::int64_t median_ns = 0;
    std::size_t steps = 0;
    std::size_t candidates = 0; // median over the repeats
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::optional<double> time_slope;      // least-squares slope of log(time) on log(n)
    std::optional<double> candidate_slope; // same for candidate counts
};

/// The ternary engine needs odd n; n = 1 runs zero steps.
BenchReport bench_growth(const BenchSpec& spec);
std::string bench_csv(const BenchReport& report);

} // namespace alphatree
