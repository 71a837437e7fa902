#include "alphatree/serialize.hpp"

#include "alphatree/error.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace alphatree {

namespace {

json node_to_json(const Forest& forest, NodeId id) {
    const TreeNode& nd = forest.node(id);
    if (nd.is_leaf()) return nd.subtree_weight.value();
    json out = json::array();
    for (const NodeId c : nd.children) out.push_back(node_to_json(forest, c));
    return out;
}

NodeId node_from_json(ForestBuilder& fb, const json& doc, std::size_t& next_leaf) {
    if (doc.is_number_integer()) {
        const auto w = doc.get<std::int64_t>();
        if (w < 0) throw InputError("negative leaf weight in tree document");
        return fb.add_leaf(next_leaf++, Weight(w));
    }
    if (!doc.is_array() || doc.size() < 2 || doc.size() > 3)
        throw InputError("tree node must be an integer or an array of 2 or 3 children");
    std::vector<NodeId> children;
    for (const auto& c : doc) children.push_back(node_from_json(fb, c, next_leaf));
    return fb.add_internal(std::move(children));
}

json ref_to_json(const Participant& p) {
    return {{"kind", p.ref.kind == RefKind::leaf ? "leaf" : "circle"},
            {"index", p.ref.index + 1},
            {"sign", p.sign},
            {"role", std::string(to_string(p.role))}};
}

template <typename T>
T field(const json& obj, const char* name) {
    if (!obj.is_object() || !obj.contains(name)) throw InputError(std::string("missing field '") + name + "'");
    try {
        return obj.at(name).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("field '") + name + "' has the wrong type");
    }
}

std::string ref_text(const NodeRef& ref, const WeightSeq& weights, const CombinationTrace& trace) {
    if (ref.kind == RefKind::leaf) return weights.at(ref.index).to_string();
    return "c" + std::to_string(ref.index + 1) + "(" + trace.steps().at(ref.index).increment.to_string() + ")";
}

} // namespace

json tree_to_json(const AlphaTree& tree) {
    if (tree.empty()) return nullptr;
    return node_to_json(tree.forest(), tree.root());
}

json forest_to_json(const Forest& forest) {
    json out = json::array();
    for (const NodeId r : forest.roots()) out.push_back(node_to_json(forest, r));
    return out;
}

AlphaTree tree_from_json(const json& doc) {
    ForestBuilder fb;
    std::size_t next_leaf = 0;
    const NodeId root = node_from_json(fb, doc, next_leaf);
    return AlphaTree(std::move(fb).build({root}));
}

json levels_to_json(const LevelSeq& levels) { return levels; }

LevelSeq levels_from_json(const json& doc) {
    if (!doc.is_array()) throw InputError("levels must be an array");
    LevelSeq out;
    for (const auto& v : doc) {
        if (!v.is_number_integer()) throw InputError("levels must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

json trace_to_json(const CombinationTrace& trace) {
    json out = json::array();
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const CombinationStep& step = trace.steps()[k];
        json parts = json::array();
        for (const auto& p : step.participants) parts.push_back(ref_to_json(p));
        json span = nullptr;
        if (step.accordion_span) span = {step.accordion_span->first + 1, step.accordion_span->second + 1};
        out.push_back({{"step", k + 1},
                       {"weight", step.increment.value()},
                       {"arity", step.arity},
                       {"participants", std::move(parts)},
                       {"accordion_span", std::move(span)}});
    }
    return out;
}

CombinationTrace trace_from_json(const json& doc, std::size_t leaf_count) {
    if (!doc.is_array()) throw InputError("trace must be an array of steps");
    std::vector<CombinationStep> steps;
    for (const auto& s : doc) {
        if (field<std::size_t>(s, "step") != steps.size() + 1) throw InputError("trace steps must be numbered 1, 2, ...");
        CombinationStep step;
        step.increment = Weight(field<std::int64_t>(s, "weight"));
        step.arity = s.contains("arity") ? field<int>(s, "arity") : 3;
        const auto& parts = s.contains("participants") ? s.at("participants") : json();
        if (!parts.is_array()) throw InputError("participants must be an array");
        for (const auto& p : parts) {
            const auto kind = p.contains("kind") ? field<std::string>(p, "kind") : std::string("leaf");
            const auto index = field<std::size_t>(p, "index");
            if (index == 0) throw InputError("participant indices start at 1");
            const int sign = field<int>(p, "sign");
            if (sign != 1 && sign != -1) throw InputError("participant sign must be +1 or -1");
            const auto role = role_from_string(p.contains("role") ? field<std::string>(p, "role") : "plain");
            if (!role) throw InputError("unknown participant role");
            NodeRef ref;
            if (kind == "leaf") ref = NodeRef::leaf(index - 1);
            else if (kind == "circle") ref = NodeRef::circle(index - 1);
            else throw InputError("participant kind must be 'leaf' or 'circle'");
            step.participants.push_back({ref, sign, *role});
        }
        if (s.contains("accordion_span") && !s.at("accordion_span").is_null()) {
            const auto span = s.at("accordion_span");
            if (!span.is_array() || span.size() != 2) throw InputError("accordion_span must be [first, last]");
            const auto a = span[0].get<std::size_t>(), b = span[1].get<std::size_t>();
            if (a == 0 || b < a) throw InputError("bad accordion_span");
            step.accordion_span = std::make_pair(a - 1, b - 1);
        }
        steps.push_back(std::move(step));
    }
    CombinationTrace trace(leaf_count, std::move(steps));
    try {
        trace.check_references();
    } catch (const TraceError& e) {
        throw InputError(e.what());
    }
    return trace;
}

json stats_to_json(const EngineStats& stats) {
    return {{"steps", stats.steps},
            {"candidates", stats.candidates},
            {"rejected", stats.rejected},
            {"fallbacks", stats.fallbacks}};
}

json report_to_json(const SolveReport& report, const WeightSeq& weights) {
    json w = json::array();
    for (const auto& x : weights) w.push_back(x.value());
    return {{"algorithm", report.algorithm},
            {"weights", std::move(w)},
            {"cost", report.cost.value()},
            {"levels", levels_to_json(report.levels)},
            {"tree", tree_to_json(report.tree)},
            {"trace", trace_to_json(report.trace)},
            {"oracle_cost", report.oracle_cost ? json(report.oracle_cost->value()) : json(nullptr)},
            {"stats", stats_to_json(report.stats)}};
}

std::string to_dot(const AlphaTree& tree) {
    std::ostringstream os;
    os << "digraph alphatree {\n  ordering=out;\n  node [shape=circle];\n";
    const Forest& f = tree.forest();
    for (NodeId id = 0; id < f.nodes().size(); ++id) {
        const TreeNode& nd = f.node(id);
        os << "  n" << id << " [label=\"" << nd.subtree_weight.to_string() << '"';
        if (nd.is_leaf()) os << ", shape=box, xlabel=\"" << nd.leaf_index + 1 << '"';
        os << "];\n";
    }
    for (NodeId id = 0; id < f.nodes().size(); ++id)
        for (const NodeId c : f.node(id).children) os << "  n" << id << " -> n" << c << ";\n";
    if (f.leaf_count() > 1) {
        os << "  { rank=same;";
        for (const NodeId leaf : f.leaves_in_order()) os << " n" << leaf << ';';
        os << " }\n";
    }
    os << "}\n";
    return os.str();
}

std::string pretty_trace(const CombinationTrace& trace, const WeightSeq& weights) {
    std::ostringstream os;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const CombinationStep& step = trace.steps()[k];
        os << "c" << k + 1 << ": [+";
        bool open = false;
        for (const auto& p : step.participants) {
            const bool inner = p.role == Role::accordion;
            if (!inner && open) os << ')';
            os << ' ';
            if (inner && !open) os << '(';
            open = inner;
            if (p.sign < 0) os << "[- " << ref_text(p.ref, weights, trace) << "]";
            else os << ref_text(p.ref, weights, trace);
        }
        if (open) os << ')';
        os << " ] = " << step.increment.to_string();
        if (step.arity == 2) os << "  (binary)";
        os << '\n';
    }
    return os.str();
}

WeightSeq parse_weights(std::string_view text) {
    WeightSeq out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        const std::string_view token = text.substr(i, j - i);
        std::int64_t value = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.front() == '-' || token.front() == '+') throw InputError("weights must be nonnegative integers: '" + std::string(token) + "'");
        if (ec == std::errc::result_out_of_range) throw InputError("weight out of range: '" + std::string(token) + "'");
        if (ec != std::errc() || end != token.data() + token.size())
            throw InputError("not an integer: '" + std::string(token) + "'");
        out.emplace_back(value);
        i = j;
    }
    if (out.empty()) throw InputError("no weights given");
    return out;
}

std::string levels_to_text(const LevelSeq& levels) {
    std::string out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(levels[i]);
    }
    return out;
}

} // namespace alphatree
