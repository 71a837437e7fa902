#include "alphatree/error.hpp"
#include "alphatree/general_solver.hpp"
#include "alphatree/harness.hpp"
#include "alphatree/hu_tucker.hpp"
#include "alphatree/level_phases.hpp"
#include "alphatree/oracle.hpp"
#include "alphatree/serialize.hpp"
#include "alphatree/ternary_engine.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace alphatree;

namespace {

enum exit_code { ok = 0, input_error = 1, divergence = 2, infeasible = 3 };

// The oracle is quadratic in memory; skip it for long inputs.
constexpr std::size_t oracle_limit = 400;

struct InputArgs {
    std::vector<std::string> inline_weights;
    std::string file;

    void attach(CLI::App* cmd) {
        cmd->add_option("weights", inline_weights, "weights separated by spaces or commas");
        cmd->add_option("--file,-f", file, "read weights from a file ('-' for stdin)");
    }

    WeightSeq read() const {
        if (!inline_weights.empty() && !file.empty()) throw InputError("give weights inline or with --file, not both");
        if (!inline_weights.empty()) {
            std::string joined;
            for (const auto& token : inline_weights) joined += token + ' ';
            return parse_weights(joined);
        }
        std::string text;
        if (file.empty() || file == "-") {
            text.assign(std::istreambuf_iterator<char>(std::cin), {});
        } else {
            std::ifstream in(file);
            if (!in) throw InputError("cannot read " + file);
            text.assign(std::istreambuf_iterator<char>(in), {});
        }
        return parse_weights(text);
    }
};

struct SolveArgs {
    InputArgs input;
    std::string algo = "ternary";
    std::string arity;
    std::string emit = "json";
};

AritySet arity_of(const std::string& name) {
    if (name == "binary") return binary_arity;
    if (name == "pure-ternary") return pure_ternary_arity;
    return mixed_arity;
}

SolveReport run_algorithm(const std::string& algo, std::string arity, const WeightSeq& weights) {
    if (arity.empty()) arity = algo == "hu-tucker" ? "binary" : "ternary";
    if (algo == "hu-tucker") {
        if (arity != "binary") throw InputError("hu-tucker builds binary trees only");
        SolveReport r = hu_tucker(weights);
        if (weights.size() <= oracle_limit) r.oracle_cost = dp_optimal(weights, binary_arity).cost;
        return r;
    }
    if (algo == "ternary") {
        if (arity == "binary") throw InputError("use --algo hu-tucker for binary trees");
        if (arity == "pure-ternary") {
            if (weights.size() % 2 == 0) throw Infeasible("pure ternary trees need an odd number of leaves");
            SolveReport r = pure_ternary_solve(weights);
            if (weights.size() <= oracle_limit) r.oracle_cost = dp_optimal(weights, pure_ternary_arity).cost;
            return r;
        }
        return general_solve(weights, {weights.size() <= oracle_limit});
    }
    DpResult dp = dp_optimal(weights, arity_of(arity));
    SolveReport r;
    r.algorithm = "dp";
    r.cost = dp.cost;
    r.levels = leaf_levels(dp.tree);
    r.trace = trace_from_tree(dp.tree);
    r.tree = std::move(dp.tree);
    r.oracle_cost = r.cost;
    return r;
}

int cmd_solve(const SolveArgs& args) {
    const WeightSeq weights = args.input.read();
    const SolveReport r = run_algorithm(args.algo, args.arity, weights);
    if (args.emit == "json") {
        std::cout << report_to_json(r, weights).dump(2) << '\n';
    } else if (args.emit == "dot") {
        std::cout << to_dot(r.tree);
    } else if (args.emit == "levels") {
        std::cout << levels_to_text(r.levels) << "\ncost " << r.cost << '\n';
    } else if (args.emit == "trace") {
        std::cout << trace_to_json(r.trace).dump(2) << "\ncost " << r.cost << '\n';
    } else {
        std::cout << pretty_trace(r.trace, weights) << "tree " << to_nested_string(r.tree) << "\ncost " << r.cost
                  << '\n';
    }
    return ok;
}

struct OracleArgs {
    InputArgs input;
    std::string arity = "ternary";
    bool exhaustive = false;
};

int cmd_oracle(const OracleArgs& args) {
    const WeightSeq weights = args.input.read();
    const AritySet arity = arity_of(args.arity);
    json out;
    if (args.exhaustive) {
        const auto r = exhaustive_optimal(weights, arity);
        out = {{"cost", r.cost.value()}, {"optimal_count", r.optimal_count}, {"tree_count", r.tree_count}};
    } else {
        const auto r = dp_optimal(weights, arity);
        out = {{"cost", r.cost.value()}, {"tree", tree_to_json(r.tree)}, {"levels", leaf_levels(r.tree)}};
    }
    std::cout << out.dump(2) << '\n';
    return ok;
}

struct VerifyArgs {
    InputArgs input;
    std::string algo = "ternary";
    std::string arity;
    std::string against = "dp";
};

int cmd_verify(const VerifyArgs& args) {
    const WeightSeq weights = args.input.read();
    const SolveReport r = run_algorithm(args.algo, args.arity, weights);
    std::string arity = args.arity.empty() ? (args.algo == "hu-tucker" ? "binary" : "ternary") : args.arity;
    const Weight oracle = args.against == "exhaustive" ? exhaustive_optimal(weights, arity_of(arity)).cost
                                                       : dp_optimal(weights, arity_of(arity)).cost;
    const auto problems = check_report(r, weights, arity == "pure-ternary");
    for (const auto& p : problems) std::cerr << "invariant: " << p << '\n';
    if (r.cost == oracle && problems.empty()) {
        std::cout << "ok cost " << r.cost << " oracle " << oracle << '\n';
        return ok;
    }
    DivergenceRecord rec{finite_weights(weights), r.cost.value(), oracle.value(), (r.cost - oracle).value(),
                         fnv1a_hex(trace_to_json(r.trace).dump())};
    std::cout << to_json(rec).dump() << '\n';
    return divergence;
}

struct ReplayArgs {
    InputArgs input;
    std::string trace_file;
    std::string emit = "json";
};

int cmd_replay(const ReplayArgs& args) {
    std::ifstream in(args.trace_file);
    if (!in) throw InputError("cannot read " + args.trace_file);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("trace file is not JSON: ") + e.what());
    }
    WeightSeq weights;
    if (doc.is_object() && doc.contains("weights") && args.input.inline_weights.empty() && args.input.file.empty()) {
        for (const auto& w : doc.at("weights")) {
            if (!w.is_number_integer() || w.get<std::int64_t>() < 0) throw InputError("bad weight in trace file");
            weights.emplace_back(w.get<std::int64_t>());
        }
    } else {
        weights = args.input.read();
    }
    const json& steps = doc.is_object() ? doc.at("trace") : doc;
    SolveReport r;
    r.algorithm = "replay";
    r.trace = trace_from_json(steps, weights.size());
    try {
        check_increments(r.trace, weights);
        r.levels = signed_levels(r.trace);
        r.tree = reconstruct_tree_from_trace(r.trace, weights);
    } catch (const Error& e) {
        throw InputError(std::string("inconsistent trace: ") + e.what());
    }
    r.cost = tree_cost(r.tree, weights);
    if (args.emit == "levels") std::cout << levels_to_text(r.levels) << "\ncost " << r.cost << '\n';
    else if (args.emit == "dot") std::cout << to_dot(r.tree);
    else std::cout << report_to_json(r, weights).dump(2) << '\n';
    return ok;
}

struct FuzzArgs {
    std::string n = "5..11";
    std::size_t count = 100;
    std::uint64_t seed = 0;
    std::string dist = "uniform";
    std::int64_t wmin = 1, wmax = 20;
    bool pcn_free = false, odd = false, worked = false;
    std::string engine = "general";
    std::string out;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    try {
        const auto dots = text.find("..");
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const auto v = std::stoull(text, &used);
            if (used != text.size()) throw InputError("bad size " + text);
            return {v, v};
        }
        const auto lo = std::stoull(text.substr(0, dots), &used);
        if (used != dots) throw InputError("bad size range " + text);
        const auto tail = text.substr(dots + 2);
        const auto hi = std::stoull(tail, &used);
        if (used != tail.size()) throw InputError("bad size range " + text);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw InputError("bad size range " + text);
    }
}

int cmd_fuzz(const FuzzArgs& args) {
    InstanceSpec spec;
    const auto dist = distribution_from_string(args.dist);
    if (!dist) throw InputError("unknown distribution " + args.dist);
    spec.dist = args.worked ? Distribution::worked_examples : *dist;
    std::tie(spec.n_min, spec.n_max) = parse_range(args.n);
    spec.count = args.count;
    spec.seed = args.seed;
    spec.weight_min = args.wmin;
    spec.weight_max = args.wmax;
    spec.pcn_free = args.pcn_free;
    spec.odd_only = args.odd || args.engine == "pure-ternary";
    std::vector<std::vector<std::int64_t>> instances;
    try {
        instances = generate_instances(spec);
    } catch (const PreconditionViolation& e) {
        throw InputError(e.what());
    }
    if (args.engine == "pure-ternary")
        std::erase_if(instances, [](const auto& w) { return w.size() % 2 == 0; });
    const FuzzResult result = fuzz_compare(instances, args.engine == "pure-ternary" ? EngineKind::pure_ternary : EngineKind::general);

    json summary = to_json(result.summary);
    summary["engine"] = args.engine;
    summary["seed"] = args.seed;
    summary["dist"] = std::string(to_string(spec.dist));
    if (!args.out.empty()) {
        std::ofstream out(args.out);
        for (const auto& rec : result.records) out << to_json(rec).dump() << '\n';
        std::ofstream sum(args.out + ".summary.json");
        sum << summary.dump(2) << '\n';
        if (!out || !sum) {
            std::cerr << "error: cannot write " << args.out << '\n';
            return input_error;
        }
    }
    for (const auto& v : result.violations) std::cerr << "invariant: " << v << '\n';
    std::cout << summary.dump(2) << '\n';
    return ok;
}

struct BenchArgs {
    std::string n = "101,201,401,801";
    std::uint64_t seed = 1;
    std::size_t repeats = 5;
    std::string engine = "ternary";
    std::string out;
};

int cmd_bench(const BenchArgs& args) {
    BenchSpec spec;
    spec.seed = args.seed;
    spec.repeats = args.repeats;
    spec.engine = args.engine == "binary" ? BenchEngine::binary : BenchEngine::ternary;
    spec.ns.clear();
    std::stringstream ss(args.n);
    for (std::string item; std::getline(ss, item, ',');) spec.ns.push_back(parse_range(item).first);
    BenchReport report;
    try {
        report = bench_growth(spec);
    } catch (const PreconditionViolation& e) {
        throw InputError(e.what());
    }
    const std::string csv = bench_csv(report);
    if (args.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(args.out);
        out << csv;
        if (!out) {
            std::cerr << "error: cannot write " << args.out << '\n';
            return input_error;
        }
        std::cout << "wrote " << report.rows.size() << " rows to " << args.out << '\n';
    }
    auto slope = [](const std::optional<double>& s) { return s ? std::to_string(*s) : std::string("n/a"); };
    std::cout << "time_slope " << slope(report.time_slope) << "\ncandidate_slope " << slope(report.candidate_slope) << '\n';
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal alphabetic binary and ternary trees"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "build a tree for one weight sequence");
    solve.input.attach(s);
    s->add_option("--algo", solve.algo)->check(CLI::IsMember({"hu-tucker", "ternary", "dp"}));
    s->add_option("--arity", solve.arity)->check(CLI::IsMember({"binary", "ternary", "pure-ternary"}));
    s->add_option("--emit", solve.emit)->check(CLI::IsMember({"json", "dot", "levels", "trace", "pretty"}));

    OracleArgs oracle;
    auto* o = app.add_subcommand("oracle", "optimal cost by dynamic programming or enumeration");
    oracle.input.attach(o);
    o->add_option("--arity", oracle.arity)->check(CLI::IsMember({"binary", "ternary", "pure-ternary"}));
    o->add_flag("--exhaustive", oracle.exhaustive, "enumerate every tree (n <= 11)");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "compare an engine with an oracle");
    verify.input.attach(v);
    v->add_option("--algo", verify.algo)->check(CLI::IsMember({"hu-tucker", "ternary", "dp"}));
    v->add_option("--arity", verify.arity)->check(CLI::IsMember({"binary", "ternary", "pure-ternary"}));
    v->add_option("--against", verify.against)->check(CLI::IsMember({"dp", "exhaustive"}));

    ReplayArgs replay;
    auto* r = app.add_subcommand("replay", "rebuild a tree from a JSON trace");
    replay.input.attach(r);
    r->add_option("--trace", replay.trace_file, "trace or report JSON")->required();
    r->add_option("--emit", replay.emit)->check(CLI::IsMember({"json", "dot", "levels"}));

    FuzzArgs fuzz;
    auto* f = app.add_subcommand("fuzz", "compare an engine with the DP on random instances");
    f->add_option("--n", fuzz.n, "size or range lo..hi");
    f->add_option("--count", fuzz.count);
    f->add_option("--seed", fuzz.seed);
    f->add_option("--dist", fuzz.dist)->check(CLI::IsMember({"uniform", "monotone", "paper-family"}));
    f->add_option("--wmin", fuzz.wmin);
    f->add_option("--wmax", fuzz.wmax);
    f->add_flag("--pcn-free", fuzz.pcn_free);
    f->add_flag("--odd", fuzz.odd);
    f->add_flag("--paper-family", fuzz.worked);
    f->add_option("--engine", fuzz.engine)->check(CLI::IsMember({"general", "pure-ternary"}));
    f->add_option("--out", fuzz.out, "JSONL divergence records; summary goes to <out>.summary.json");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "measure engine growth");
    b->add_option("--n", bench.n, "comma-separated sizes");
    b->add_option("--seed", bench.seed);
    b->add_option("--repeats", bench.repeats);
    b->add_option("--engine", bench.engine)->check(CLI::IsMember({"ternary", "binary"}));
    b->add_option("--out", bench.out, "CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    try {
        if (s->parsed()) return cmd_solve(solve);
        if (o->parsed()) return cmd_oracle(oracle);
        if (v->parsed()) return cmd_verify(verify);
        if (r->parsed()) return cmd_replay(replay);
        if (f->parsed()) return cmd_fuzz(fuzz);
        if (b->parsed()) return cmd_bench(bench);
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return infeasible;
    } catch (const PreconditionViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const RefusedSize& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
    return ok;
}
