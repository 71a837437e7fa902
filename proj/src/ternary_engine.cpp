#include "alphatree/ternary_engine.hpp"

#include "alphatree/error.hpp"
#include "alphatree/level_phases.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace alphatree {

namespace {

constexpr std::size_t no_owner = std::numeric_limits<std::size_t>::max();

OrderKey square_key(std::size_t leaf) { return {2 * static_cast<std::int64_t>(leaf) + 2, 0}; }

bool lighter(const TopItem& a, const TopItem& b) { return std::tie(a.weight, a.key) < std::tie(b.weight, b.key); }

Element element_of(const TopItem& item) { return {item.ref, +1, item.weight, item.key}; }

} // namespace

bool selected_before(const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.left.key != b.left.key) return a.left.key < b.left.key;
    const auto& ea = a.middle.elements;
    const auto& eb = b.middle.elements;
    if (ea.size() != eb.size()) return ea.size() < eb.size();
    for (std::size_t i = 0; i < ea.size(); ++i)
        if (ea[i].key != eb[i].key) return ea[i].key < eb[i].key;
    return a.right.key < b.right.key;
}

std::string describe(const Candidate& candidate) {
    std::string out = "(" + std::to_string(candidate.left.weight) + ", ";
    if (candidate.middle.is_single()) {
        out += std::to_string(candidate.middle.elements.front().weight);
    } else {
        out += '(';
        for (std::size_t i = 0; i < candidate.middle.elements.size(); ++i) {
            const auto& e = candidate.middle.elements[i];
            if (i) out += ", ";
            out += (e.sign > 0 ? "+" : "-") + std::to_string(e.weight);
        }
        out += ')';
    }
    out += ", " + std::to_string(candidate.right.weight) + ") = " + std::to_string(candidate.weight);
    return out;
}

EngineState::EngineState(std::vector<std::int64_t> weights)
    : weights_(std::move(weights)), owner_(weights_.size(), no_owner), levels_(weights_.size(), 0) {
    items_.reserve(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) items_.push_back({NodeRef::leaf(i), weights_[i], square_key(i)});
}

std::vector<NegativeSlot> EngineState::available_negatives() const {
    const auto shape = pure_ternary_shape(levels_);
    if (!shape) throw std::logic_error("engine levels no longer describe a ternary forest");
    std::vector<NegativeSlot> out;
    for (const auto root : shape->roots) {
        const ShapeNode& nd = shape->nodes[static_cast<std::size_t>(root)];
        if (nd.leaf >= 0) continue;
        const ShapeNode& middle = shape->nodes[static_cast<std::size_t>(nd.children[1])];
        if (middle.leaf < 0) continue;
        const auto leaf = static_cast<std::size_t>(middle.leaf);
        const std::size_t owner = owner_[leaf];
        if (owner == no_owner || !circle_top_[owner] || spent_.contains({leaf, owner})) continue;
        out.push_back({leaf, weights_[leaf], owner});
    }
    return out;
}

std::vector<Candidate> EngineState::generate(std::span<const NegativeSlot> negatives, bool lightest_outer_only) const {
    const std::size_t m = items_.size();
    std::vector<Candidate> out;
    if (m < 3) return out;

    // Outer nodes of a middle starting at item i: items j < i with no square
    // strictly between j and i. Symmetric on the right.
    std::vector<std::size_t> left_stop(m, 0), right_stop(m, m - 1);
    std::vector<std::size_t> left_best(m, m), right_best(m, m);
    for (std::size_t i = 1; i < m; ++i) {
        const bool prev_square = items_[i - 1].ref.kind == RefKind::leaf;
        left_stop[i] = prev_square ? i - 1 : left_stop[i - 1];
        const std::size_t b = left_best[i - 1];
        left_best[i] = (prev_square || b == m || lighter(items_[i - 1], items_[b])) ? i - 1 : b;
    }
    for (std::size_t i = m - 1; i-- > 0;) {
        const bool next_square = items_[i + 1].ref.kind == RefKind::leaf;
        right_stop[i] = next_square ? i + 1 : right_stop[i + 1];
        const std::size_t b = right_best[i + 1];
        // Ties keep the leftmost item.
        right_best[i] = (next_square || b == m || !lighter(items_[b], items_[i + 1])) ? i + 1 : b;
    }

    auto emit = [&](std::size_t first, std::size_t last, const Accordion& middle) {
        if (first == 0 || last + 1 >= m) return;
        if (lightest_outer_only) {
            const TopItem& l = items_[left_best[first]];
            const TopItem& r = items_[right_best[last]];
            out.push_back({element_of(l), middle, element_of(r), l.weight + middle.weight + r.weight});
            return;
        }
        for (std::size_t a = left_stop[first]; a < first; ++a)
            for (std::size_t c = last + 1; c <= right_stop[last]; ++c)
                out.push_back({element_of(items_[a]), middle, element_of(items_[c]), items_[a].weight + middle.weight + items_[c].weight});
    };

    for (std::size_t i = 0; i < m; ++i) {
        Accordion single;
        single.elements.push_back(element_of(items_[i]));
        single.weight = items_[i].weight;
        emit(i, i, single);
    }

    // Accordion material: top-level squares and available negatives in order.
    struct Material {
        Element element;
        std::size_t item; // index into items_ for positives
    };
    std::vector<Material> material;
    for (std::size_t i = 0; i < m; ++i)
        if (items_[i].ref.kind == RefKind::leaf) material.push_back({element_of(items_[i]), i});
    for (const auto& neg : negatives)
        material.push_back({{NodeRef::leaf(neg.leaf), -1, neg.weight, square_key(neg.leaf)}, m});
    std::sort(material.begin(), material.end(), [](const Material& a, const Material& b) { return a.element.key < b.element.key; });

    for (std::size_t i = 0; i < material.size(); ++i) {
        if (material[i].element.sign < 0) continue;
        Accordion acc;
        acc.elements.push_back(material[i].element);
        acc.weight = material[i].element.weight;
        for (std::size_t j = i + 2; j < material.size(); j += 2) {
            if (material[j - 1].element.sign > 0 || material[j].element.sign < 0) break;
            acc.elements.push_back(material[j - 1].element);
            acc.elements.push_back(material[j].element);
            acc.weight += material[j].element.weight - material[j - 1].element.weight;
            emit(material[i].item, material[j].item, acc);
        }
    }
    return out;
}

void EngineState::add_net(const Element& e, int sign, std::vector<int>& dense, std::vector<std::uint32_t>& touched) const {
    if (e.ref.kind == RefKind::leaf) {
        dense[e.ref.index] += sign;
        touched.push_back(static_cast<std::uint32_t>(e.ref.index));
        return;
    }
    for (const auto& [leaf, count] : circle_net_[e.ref.index]) {
        dense[leaf] += sign * count;
        touched.push_back(leaf);
    }
}

bool EngineState::is_valid(const Candidate& candidate) const {
    std::vector<int> next = levels_;
    std::vector<std::uint32_t> touched;
    add_net(candidate.left, +1, next, touched);
    for (const auto& e : candidate.middle.elements) add_net(e, e.sign, next, touched);
    add_net(candidate.right, +1, next, touched);
    return is_pure_ternary_forest(next);
}

Candidate EngineState::select() {
    const auto negatives = available_negatives();
    const auto fast = generate(negatives, true);
    stats_.candidates += fast.size();
    if (fast.empty()) throw EngineStuck("fewer than three nodes left to combine");
    const auto best = std::min_element(fast.begin(), fast.end(), selected_before);
    if (is_valid(*best)) return *best;

    ++stats_.fallbacks;
    auto all = generate(negatives, false);
    std::sort(all.begin(), all.end(), selected_before);
    for (const auto& c : all) {
        if (is_valid(c)) return c;
        ++stats_.rejected;
    }
    throw EngineStuck("no candidate keeps a valid ternary forest after step " + std::to_string(steps_.size()));
}

std::vector<Candidate> EngineState::enumerate_candidates() const {
    auto all = generate(available_negatives(), false);
    std::sort(all.begin(), all.end(), selected_before);
    return all;
}

void EngineState::insert_item(const TopItem& item) {
    const auto at = std::lower_bound(items_.begin(), items_.end(), item.key, [](const TopItem& t, const OrderKey& k) { return t.key < k; });
    items_.insert(at, item);
}

void EngineState::erase_item(NodeRef ref) {
    const auto at = std::find_if(items_.begin(), items_.end(), [&](const TopItem& t) { return t.ref == ref; });
    if (at == items_.end()) throw std::logic_error("participant is not a top-level node");
    items_.erase(at);
}

void EngineState::apply(const Candidate& candidate) {
    const std::size_t id = steps_.size();
    const bool single = candidate.middle.is_single();

    CombinationStep step;
    step.increment = Weight(candidate.weight);
    step.arity = 3;
    const Role outer = single ? Role::plain : Role::outer;
    const Role inner = single ? Role::plain : Role::accordion;
    step.participants.push_back({candidate.left.ref, +1, outer});
    for (const auto& e : candidate.middle.elements) step.participants.push_back({e.ref, e.sign, inner});
    step.participants.push_back({candidate.right.ref, +1, outer});
    if (!single)
        step.accordion_span = std::make_pair(candidate.middle.elements.front().ref.index, candidate.middle.elements.back().ref.index);

    // The new circle raises every leaf below it by its signed multiplicity.
    std::vector<int> dense(weights_.size(), 0);
    std::vector<std::uint32_t> touched;
    add_net(candidate.left, +1, dense, touched);
    for (const auto& e : candidate.middle.elements) add_net(e, e.sign, dense, touched);
    add_net(candidate.right, +1, dense, touched);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    std::vector<std::pair<std::uint32_t, int>> net;
    for (const auto leaf : touched) {
        if (dense[leaf] == 0) continue;
        net.emplace_back(leaf, dense[leaf]);
        levels_[leaf] += dense[leaf];
    }

    for (const auto& p : step.participants) {
        if (p.sign > 0) {
            erase_item(p.ref);
            if (p.ref.kind == RefKind::leaf) {
                owner_[p.ref.index] = id;
            } else {
                circle_top_[p.ref.index] = false;
                std::vector<std::pair<std::uint32_t, int>>().swap(circle_net_[p.ref.index]);
            }
        } else {
            const std::size_t leaf = p.ref.index;
            spent_.insert({leaf, owner_[leaf]});
            insert_item({p.ref, weights_[leaf], square_key(leaf)});
        }
    }

    const OrderKey key = candidate.left.ref.kind == RefKind::leaf
                             ? OrderKey{candidate.left.key.first - 1, static_cast<std::int64_t>(id) + 1}
                             : OrderKey{candidate.left.key.first, static_cast<std::int64_t>(id) + 1};
    circle_weight_.push_back(candidate.weight);
    circle_key_.push_back(key);
    circle_top_.push_back(true);
    circle_net_.push_back(std::move(net));
    insert_item({NodeRef::circle(id), candidate.weight, key});
    steps_.push_back(std::move(step));
    ++stats_.steps;
}

CombinationTrace run_ternary_phase1(std::span<const std::int64_t> weights, std::size_t steps, EngineStats* stats) {
    EngineState state(std::vector<std::int64_t>(weights.begin(), weights.end()));
    for (std::size_t k = 0; k < steps; ++k) {
        if (state.finished()) throw PreconditionViolation("more steps requested than the sequence allows");
        state.step();
    }
    if (stats) {
        stats->steps += state.stats().steps;
        stats->candidates += state.stats().candidates;
        stats->rejected += state.stats().rejected;
        stats->fallbacks += state.stats().fallbacks;
    }
    return state.trace();
}

CombinationTrace pure_ternary_phase1(const WeightSeq& weights, std::optional<std::size_t> max_steps, EngineStats* stats) {
    const auto w = finite_weights(weights);
    if (w.size() % 2 == 0) throw PreconditionViolation("pure ternary trees need an odd number of leaves");
    const std::size_t full = (w.size() - 1) / 2;
    return run_ternary_phase1(w, max_steps ? std::min(*max_steps, full) : full, stats);
}

SolveReport pure_ternary_solve(const WeightSeq& weights) {
    SolveReport report;
    report.algorithm = "ternary-pure";
    report.trace = pure_ternary_phase1(weights, std::nullopt, &report.stats);
    report.levels = signed_levels(report.trace);
    report.tree = reconstruct_tree_from_trace(report.trace, weights);
    report.cost = tree_cost(report.tree, weights);
    if (report.cost != report.trace.total_increment())
        throw std::logic_error("reconstructed cost differs from the sum of increments");
    return report;
}

} // namespace alphatree
