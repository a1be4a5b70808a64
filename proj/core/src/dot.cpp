#include "ucm/dot.hpp"

#include <cstdio>
#include <sstream>

namespace ucm {

namespace {

std::string fmt_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", p);
    return buf;
}

std::string quote(const std::string& id) {
    std::string out = "\"";
    for (char c : id) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

const char* shape_of(StateKind kind) {
    switch (kind) {
        case StateKind::Start: return "circle";
        case StateKind::End: return "doublecircle";
        case StateKind::Stub:
        case StateKind::Selection: return "diamond";
        case StateKind::OrFork:
        case StateKind::OrJoin:
        case StateKind::AndFork:
        case StateKind::AndJoin: return "point";
        default: return "box";
    }
}

std::string edge_label(double probability, const std::optional<EdgeCondition>& condition) {
    std::string label;
    if (probability != 1.0) label = fmt_probability(probability);
    if (condition) {
        if (!label.empty()) label += ' ';
        label += '[' + std::string(condition->value ? "" : "!") + condition->var + ']';
    }
    return label;
}

template <typename States, typename Transitions>
void write_digraph(std::ostream& out, const std::string& name, const States& states,
                   const Transitions& transitions) {
    out << "digraph " << quote(name) << " {\n";
    out << "  rankdir=LR;\n";
    for (const auto& s : states)
        out << "  " << quote(s.id) << " [label=" << quote(s.source)
            << " shape=" << shape_of(s.kind) << "];\n";
    for (const auto& t : transitions) {
        out << "  " << quote(states[t.from].id) << " -> " << quote(states[t.to].id);
        std::string label = edge_label(t.probability, t.condition);
        if (!label.empty()) out << " [label=" << quote(label) << "]";
        out << ";\n";
    }
    out << "}\n";
}

}  // namespace

std::string to_dot(const ChainGraph& chain) {
    std::ostringstream out;
    write_digraph(out, chain.name, chain.states, chain.transitions);
    return out.str();
}

std::string to_dot(const UsageModel& um) {
    std::string out = to_dot(um.top);
    for (const auto& sub : um.subs) out += to_dot(sub);
    return out;
}

std::string to_dot(const FlatChain& chain, const std::string& name) {
    std::ostringstream out;
    write_digraph(out, name, chain.states, chain.transitions);
    return out.str();
}

}  // namespace ucm
