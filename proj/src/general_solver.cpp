#include "alphatree/general_solver.hpp"

#include "alphatree/error.hpp"
#include "alphatree/oracle.hpp"
#include "alphatree/parity.hpp"
#include "alphatree/pcn.hpp"
#include "alphatree/ternary_engine.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace alphatree {

namespace {

// A solved run: its steps (circle ids local to `steps`) and the roots it leaves.
struct SubSolution {
    std::int64_t cost = 0;
    std::vector<CombinationStep> steps;
    std::vector<NodeRef> roots;
    std::vector<std::int64_t> root_weights;
    std::vector<std::pair<std::size_t, std::size_t>> root_spans; // leaf extent of each root
};

NodeRef shifted(NodeRef ref, std::size_t offset) {
    return ref.kind == RefKind::circle ? NodeRef::circle(ref.index + offset) : ref;
}

class Solver {
public:
    Solver(std::vector<std::int64_t> weights, EngineStats& stats) : w_(std::move(weights)), stats_(stats) {}

    std::optional<SubSolution> solve(std::size_t first, std::size_t last, const std::vector<PcnNode>& children,
                                     std::size_t roots);

private:
    struct Unit {
        NodeRef ref;
        std::int64_t weight;
        std::pair<std::size_t, std::size_t> span;
    };

    void complete(SubSolution& acc, const std::vector<Unit>& units, std::size_t roots);

    std::vector<std::int64_t> w_;
    EngineStats& stats_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::optional<SubSolution>> memo_;
};

// Appends `sub` to `acc` and returns its roots as units of the enclosing run.
template <typename Unit>
void splice(SubSolution& acc, const SubSolution& sub, std::vector<Unit>& units) {
    const std::size_t offset = acc.steps.size();
    for (auto step : sub.steps) {
        for (auto& p : step.participants) p.ref = shifted(p.ref, offset);
        acc.steps.push_back(std::move(step));
    }
    acc.cost += sub.cost;
    for (std::size_t i = 0; i < sub.roots.size(); ++i)
        units.push_back({shifted(sub.roots[i], offset), sub.root_weights[i], sub.root_spans[i]});
}

std::optional<SubSolution> Solver::solve(std::size_t first, std::size_t last, const std::vector<PcnNode>& children,
                                         std::size_t roots) {
    const auto key = std::make_tuple(first, last, roots);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<UnitDescriptor> descriptors;
    std::vector<const PcnNode*> pcn_of;
    {
        std::size_t i = first, c = 0;
        while (i <= last) {
            if (c < children.size() && children[c].first == i) {
                descriptors.push_back({UnitKind::pcn, children[c].total_weight});
                pcn_of.push_back(&children[c]);
                i = children[c++].last + 1;
            } else {
                descriptors.push_back({UnitKind::square, Weight(w_[i])});
                pcn_of.push_back(nullptr);
                ++i;
            }
        }
    }
    std::vector<std::size_t> unit_first(descriptors.size());
    for (std::size_t u = 0, i = first; u < descriptors.size(); ++u) {
        unit_first[u] = i;
        i = pcn_of[u] ? pcn_of[u]->last + 1 : i + 1;
    }

    std::optional<SubSolution> best;
    for (const ParityAction& action : parity_plan(descriptors, roots)) {
        SubSolution acc;
        std::vector<Unit> units;
        bool feasible = true;
        for (std::size_t u = 0; u < descriptors.size() && feasible; ++u) {
            const std::size_t leaf = unit_first[u];
            if (action.kind == ParityKind::binary_pair && action.unit == u) {
                CombinationStep step;
                step.arity = 2;
                step.increment = Weight(w_[leaf] + w_[leaf + 1]);
                step.participants = {{NodeRef::leaf(leaf), +1, Role::plain}, {NodeRef::leaf(leaf + 1), +1, Role::plain}};
                acc.steps.push_back(std::move(step));
                acc.cost += w_[leaf] + w_[leaf + 1];
                units.push_back({NodeRef::circle(acc.steps.size() - 1), w_[leaf] + w_[leaf + 1], {leaf, leaf + 1}});
                ++u;
                continue;
            }
            if (!pcn_of[u]) {
                units.push_back({NodeRef::leaf(leaf), w_[leaf], {leaf, leaf}});
                continue;
            }
            const PcnNode& child = *pcn_of[u];
            const std::size_t want = action.kind == ParityKind::split_pcn && action.unit == u ? 2 : 1;
            const auto sub = solve(child.first, child.last, child.children, want);
            if (!sub) {
                feasible = false;
                break;
            }
            splice(acc, *sub, units);
        }
        if (!feasible || units.size() < roots) continue;
        complete(acc, units, roots);
        if (!best || acc.cost < best->cost) best = std::move(acc);
    }
    memo_[key] = best;
    return best;
}

// Runs the ternary engine over the units until `roots` trees remain.
void Solver::complete(SubSolution& acc, const std::vector<Unit>& units, std::size_t roots) {
    if (units.size() == roots) {
        for (const auto& u : units) {
            acc.roots.push_back(u.ref);
            acc.root_weights.push_back(u.weight);
            acc.root_spans.push_back(u.span);
        }
        return;
    }
    std::vector<std::int64_t> unit_weights;
    for (const auto& u : units) unit_weights.push_back(u.weight);
    const CombinationTrace trace = run_ternary_phase1(unit_weights, (units.size() - roots) / 2, &stats_);
    const std::size_t offset = acc.steps.size();

    bool canonical = roots != 1;
    for (const auto& step : trace.steps())
        for (const auto& p : step.participants)
            if (p.sign < 0 && units[p.ref.index].ref.kind != RefKind::leaf) canonical = true;

    if (!canonical) {
        for (const auto& step : trace.steps()) {
            CombinationStep out = step;
            for (auto& p : out.participants)
                p.ref = p.ref.kind == RefKind::leaf ? units[p.ref.index].ref : NodeRef::circle(p.ref.index + offset);
            if (step.accordion_span)
                out.accordion_span = std::make_pair(units[step.accordion_span->first].span.first,
                                                    units[step.accordion_span->second].span.second);
            acc.cost += step.increment.value();
            acc.steps.push_back(std::move(out));
        }
        acc.roots.push_back(NodeRef::circle(acc.steps.size() - 1));
        acc.root_weights.push_back(acc.steps.back().increment.value());
        acc.root_spans.push_back({units.front().span.first, units.back().span.second});
        return;
    }

    // Record the forest the engine describes as plain steps, children first.
    const LevelSeq levels = signed_levels(trace);
    const auto shape = pure_ternary_shape(levels);
    if (!shape) throw std::logic_error("engine levels do not describe a ternary forest");
    struct Built {
        NodeRef ref;
        std::int64_t weight;
        std::pair<std::size_t, std::size_t> span;
    };
    auto emit = [&](auto&& self, std::int32_t id) -> Built {
        const ShapeNode& nd = shape->nodes[static_cast<std::size_t>(id)];
        if (nd.leaf >= 0) {
            const Unit& u = units[static_cast<std::size_t>(nd.leaf)];
            return {u.ref, u.weight, u.span};
        }
        CombinationStep step;
        std::int64_t total = 0;
        std::pair<std::size_t, std::size_t> span{0, 0};
        for (std::size_t k = 0; k < 3; ++k) {
            const Built c = self(self, nd.children[k]);
            step.participants.push_back({c.ref, +1, Role::plain});
            total += c.weight;
            if (k == 0) span.first = c.span.first;
            span.second = c.span.second;
        }
        step.increment = Weight(total);
        acc.cost += total;
        acc.steps.push_back(std::move(step));
        return {NodeRef::circle(acc.steps.size() - 1), total, span};
    };
    for (const auto root : shape->roots) {
        const Built b = emit(emit, root);
        acc.roots.push_back(b.ref);
        acc.root_weights.push_back(b.weight);
        acc.root_spans.push_back(b.span);
    }
}

} // namespace

SolveReport general_solve(const WeightSeq& weights, const GeneralOptions& options) {
    if (weights.empty()) throw PreconditionViolation("weight sequence is empty");
    const auto w = finite_weights(weights);
    SolveReport report;
    report.algorithm = "ternary-general";

    Solver solver(w, report.stats);
    const auto pcns = detect_pcns(weights);
    const auto solved = solver.solve(0, w.size() - 1, pcns, 1);
    if (!solved) throw std::logic_error("no parity plan completes the sequence");

    report.trace = CombinationTrace(w.size(), solved->steps);
    report.levels = signed_levels(report.trace);
    report.tree = reconstruct_tree_from_trace(report.trace, weights);
    report.cost = tree_cost(report.tree, weights);
    if (report.cost != report.trace.total_increment())
        throw std::logic_error("reconstructed cost differs from the sum of increments");
    if (options.with_oracle) report.oracle_cost = dp_optimal(weights, mixed_arity).cost;
    return report;
}

} // namespace alphatree
