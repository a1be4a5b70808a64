#include "ucm/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ucm {

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Start: return "start";
        case NodeKind::End: return "end";
        case NodeKind::Responsibility: return "responsibility";
        case NodeKind::Stub: return "stub";
        case NodeKind::OrFork: return "or_fork";
        case NodeKind::OrJoin: return "or_join";
        case NodeKind::AndFork: return "and_fork";
        case NodeKind::AndJoin: return "and_join";
    }
    return "?";
}

std::optional<NodeKind> node_kind_from_string(const std::string& s) {
    if (s == "start") return NodeKind::Start;
    if (s == "end") return NodeKind::End;
    if (s == "responsibility") return NodeKind::Responsibility;
    if (s == "stub") return NodeKind::Stub;
    if (s == "or_fork") return NodeKind::OrFork;
    if (s == "or_join") return NodeKind::OrJoin;
    if (s == "and_fork") return NodeKind::AndFork;
    if (s == "and_join") return NodeKind::AndJoin;
    return std::nullopt;
}

const char* to_string(ObjectType type) {
    switch (type) {
        case ObjectType::Responsibility: return "responsibility";
        case ObjectType::Point: return "point";
        case ObjectType::Plugin: return "plugin";
        case ObjectType::Stub: return "stub";
        case ObjectType::Component: return "component";
    }
    return "?";
}

const Node* MapGraph::find_node(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

const MapGraph* UcmModel::root_map() const {
    for (const auto& m : maps)
        if (m.root) return &m;
    return nullptr;
}

const MapGraph* UcmModel::find_map(const std::string& name) const {
    for (const auto& m : maps)
        if (m.name == name) return &m;
    return nullptr;
}

std::optional<ObjectType> object_type(const UcmModel& model, const std::string& id) {
    for (const auto& m : model.maps) {
        if (m.name == id) {
            if (m.root) return std::nullopt;  // the root map is not an object
            return ObjectType::Plugin;
        }
        for (const auto& n : m.nodes) {
            if (n.id != id) continue;
            switch (n.kind) {
                case NodeKind::Start:
                case NodeKind::End: return ObjectType::Point;
                case NodeKind::Responsibility: return ObjectType::Responsibility;
                case NodeKind::Stub: return ObjectType::Stub;
                default: return std::nullopt;  // forks/joins are not objects
            }
        }
    }
    for (const auto& c : model.components)
        if (c.name == id) return ObjectType::Component;
    return std::nullopt;
}

std::vector<std::string> ObjectModel::children_of(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& [child, par] : parent)
        if (par == id) out.push_back(child);
    return out;  // map iteration keeps this sorted
}

std::optional<StubPortEdges> stub_port_edges(const MapGraph& map, const Node& stub) {
    if (!stub.stub) return std::nullopt;
    StubPortEdges result;
    for (std::size_t i = 0; i < map.edges.size(); ++i) {
        if (map.edges[i].to == stub.id) result.input_edges.push_back(i);
        if (map.edges[i].from == stub.id) result.output_edges.push_back(i);
    }
    if (result.input_edges.size() != stub.stub->inputs.size()) return std::nullopt;
    if (result.output_edges.size() != stub.stub->outputs.size()) return std::nullopt;
    return result;
}

namespace {

class IssueSink {
public:
    explicit IssueSink(ValidationReport& report) : report_(report) {}

    template <typename... Parts>
    void add(const std::string& where, Parts&&... parts) {
        std::ostringstream msg;
        (msg << ... << parts);
        report_.issues.push_back({where, msg.str()});
    }

private:
    ValidationReport& report_;
};

std::string map_loc(const MapGraph& m) { return "map '" + m.name + "'"; }

std::string node_loc(const MapGraph& m, const Node& n) {
    return "map '" + m.name + "', node '" + n.id + "'";
}

std::string edge_loc(const MapGraph& m, const Edge& e) {
    return "map '" + m.name + "', edge '" + e.from + "' -> '" + e.to + "'";
}

bool sums_to_one(double sum) { return std::abs(sum - 1.0) <= kProbabilityTolerance; }

void check_maps(const UcmModel& model, IssueSink& sink) {
    int roots = 0;
    for (const auto& m : model.maps) roots += m.root ? 1 : 0;
    if (model.maps.empty()) sink.add("model", "no maps declared");
    else if (roots == 0) sink.add("model", "no root map");
    else if (roots > 1) sink.add("model", "multiple root maps");

    // One shared id space: nodes, maps, and components all name objects.
    std::set<std::string> seen;
    for (const auto& m : model.maps)
        if (!seen.insert(m.name).second) sink.add(map_loc(m), "duplicate identifier '", m.name, "'");
    for (const auto& m : model.maps)
        for (const auto& n : m.nodes)
            if (!seen.insert(n.id).second)
                sink.add(node_loc(m, n), "duplicate identifier '", n.id, "'");
    for (const auto& c : model.components)
        if (!seen.insert(c.name).second)
            sink.add("component '" + c.name + "'", "duplicate identifier '", c.name, "'");
}

void check_components(const UcmModel& model, IssueSink& sink) {
    for (const auto& c : model.components) {
        if (c.parent.empty()) continue;
        bool found = false;
        for (const auto& other : model.components) found |= other.name == c.parent;
        if (!found) {
            sink.add("component '" + c.name + "'", "unknown parent component '", c.parent, "'");
            continue;
        }
        // Walk up; revisiting c.name means a cycle.
        std::set<std::string> visited{c.name};
        std::string cur = c.parent;
        while (!cur.empty()) {
            if (!visited.insert(cur).second) {
                sink.add("component '" + c.name + "'", "component parent cycle through '", cur, "'");
                break;
            }
            const Component* next = nullptr;
            for (const auto& other : model.components)
                if (other.name == cur) next = &other;
            cur = next ? next->parent : "";
        }
    }
}

void check_nodes(const UcmModel& model, const MapGraph& m, IssueSink& sink) {
    for (const auto& n : m.nodes) {
        if (n.stub.has_value() != (n.kind == NodeKind::Stub))
            sink.add(node_loc(m, n), n.stub ? "stub detail on non-stub node"
                                            : "stub node without stub detail");
        if (n.kind == NodeKind::Start) {
            if (!(n.trigger > 0.0 && n.trigger <= 1.0))
                sink.add(node_loc(m, n), "trigger probability ", n.trigger, " outside (0, 1]");
        } else if (n.trigger != 1.0) {
            sink.add(node_loc(m, n), "trigger probability on non-start node");
        }
        if (!n.component.empty()) {
            bool found = false;
            for (const auto& c : model.components) found |= c.name == n.component;
            if (!found) sink.add(node_loc(m, n), "unknown component '", n.component, "'");
        }
    }
}

void check_edges(const UcmModel& model, const MapGraph& m, IssueSink& sink) {
    std::map<std::string, int> in_count, out_count;
    for (const auto& e : m.edges) {
        const Node* from = m.find_node(e.from);
        const Node* to = m.find_node(e.to);
        if (!from) sink.add(edge_loc(m, e), "unknown node '", e.from, "'");
        if (!to) sink.add(edge_loc(m, e), "unknown node '", e.to, "'");
        if (!from || !to) continue;
        ++out_count[e.from];
        ++in_count[e.to];

        if (!(e.probability > 0.0 && e.probability <= 1.0))
            sink.add(edge_loc(m, e), "probability ", e.probability, " outside (0, 1]");
        else if (e.probability != 1.0 && from->kind != NodeKind::OrFork)
            sink.add(edge_loc(m, e), "probability ", e.probability,
                     " on an edge not leaving an OR-fork");
        if (e.condition) {
            if (from->kind != NodeKind::OrFork)
                sink.add(edge_loc(m, e), "condition on an edge not leaving an OR-fork");
            bool declared = std::find(model.variables.begin(), model.variables.end(),
                                      e.condition->var) != model.variables.end();
            if (!declared)
                sink.add(edge_loc(m, e), "condition references undeclared variable '",
                         e.condition->var, "'");
        }
    }

    for (const auto& n : m.nodes) {
        int in = in_count[n.id];
        int out = out_count[n.id];
        switch (n.kind) {
            case NodeKind::Start:
                if (in > 0) sink.add(node_loc(m, n), "start point has incoming edges");
                break;
            case NodeKind::End:
                if (out > 0) sink.add(node_loc(m, n), "end point has outgoing edges");
                break;
            case NodeKind::OrFork:
            case NodeKind::AndFork:
                if (out < 2) sink.add(node_loc(m, n), "fork has ", out, " outgoing edges, needs >= 2");
                break;
            case NodeKind::OrJoin:
            case NodeKind::AndJoin:
                if (in < 2) sink.add(node_loc(m, n), "join has ", in, " incoming edges, needs >= 2");
                break;
            default:
                break;
        }
        // Deterministic traversal needs a unique continuation everywhere else.
        bool may_branch = n.kind == NodeKind::OrFork || n.kind == NodeKind::AndFork ||
                          n.kind == NodeKind::Stub;
        if (!may_branch && out > 1)
            sink.add(node_loc(m, n), "non-fork node has ", out, " outgoing edges");

        if (n.kind == NodeKind::OrFork && out >= 2) {
            double sum = 0.0;
            for (const auto& e : m.edges)
                if (e.from == n.id) sum += e.probability;
            if (!sums_to_one(sum))
                sink.add(node_loc(m, n), "probability sum ", sum, " != 1");
        }
    }
}

void check_stub(const UcmModel& model, const MapGraph& m, const Node& n, IssueSink& sink) {
    const StubDetail& stub = *n.stub;
    const std::string loc = node_loc(m, n);

    if (!stub.dynamic) {
        if (stub.bindings.size() != 1)
            sink.add(loc, "static stub has ", stub.bindings.size(), " bindings, needs exactly 1");
        else if (std::abs(stub.bindings[0].probability - 1.0) > kProbabilityTolerance)
            sink.add(loc, "static stub binding probability ", stub.bindings[0].probability,
                     " != 1");
    } else {
        double sum = 0.0;
        for (const auto& b : stub.bindings) {
            if (!(b.probability > 0.0 && b.probability <= 1.0))
                sink.add(loc, "binding '", b.plugin, "' probability ", b.probability,
                         " outside (0, 1]");
            sum += b.probability;
        }
        if (stub.bindings.empty()) sink.add(loc, "dynamic stub has no bindings");
        else if (!sums_to_one(sum)) sink.add(loc, "binding probability sum ", sum, " != 1");
    }

    std::set<std::string> bound_plugins;
    for (const auto& b : stub.bindings) {
        if (!bound_plugins.insert(b.plugin).second)
            sink.add(loc, "plug-in '", b.plugin, "' bound more than once");
        const MapGraph* plugin = model.find_map(b.plugin);
        if (!plugin) {
            sink.add(loc, "unknown plug-in map '", b.plugin, "'");
            continue;
        }
        if (plugin->root) {
            sink.add(loc, "binding references the root map '", b.plugin, "'");
            continue;
        }
        for (const auto& input : stub.inputs) {
            auto it = b.in.find(input);
            if (it == b.in.end()) {
                sink.add(loc, "binding '", b.plugin, "' does not map stub input '", input, "'");
                continue;
            }
            const Node* target = plugin->find_node(it->second);
            if (!target || target->kind != NodeKind::Start)
                sink.add(loc, "binding '", b.plugin, "' input '", input,
                         "' does not map to a start point of the plug-in");
        }
        for (const auto& [key, _] : b.in) {
            if (std::find(stub.inputs.begin(), stub.inputs.end(), key) == stub.inputs.end())
                sink.add(loc, "binding '", b.plugin, "' maps unknown stub input '", key, "'");
        }
        for (const auto& [end_point, output] : b.out) {
            const Node* end = plugin->find_node(end_point);
            if (!end || end->kind != NodeKind::End)
                sink.add(loc, "binding '", b.plugin, "' maps '", end_point,
                         "', which is not an end point of the plug-in");
            if (std::find(stub.outputs.begin(), stub.outputs.end(), output) == stub.outputs.end())
                sink.add(loc, "binding '", b.plugin, "' maps end point '", end_point,
                         "' to unknown stub output '", output, "'");
        }
    }

    if (!stub_port_edges(m, n))
        sink.add(loc, "stub has ", stub.inputs.size(), " inputs / ", stub.outputs.size(),
                 " outputs but its incident edge counts differ");
}

// A plug-in transitively containing its own map would never finish inlining.
void check_plugin_cycles(const UcmModel& model, IssueSink& sink) {
    std::map<std::string, std::vector<std::string>> refs;
    for (const auto& m : model.maps)
        for (const auto& n : m.nodes)
            if (n.stub)
                for (const auto& b : n.stub->bindings) refs[m.name].push_back(b.plugin);

    std::set<std::string> reported;
    for (const auto& m : model.maps) {
        std::set<std::string> on_path{m.name};
        // Depth-first over the reference graph looking for a way back to m.
        std::vector<std::pair<std::string, std::size_t>> frames{{m.name, 0}};
        while (!frames.empty()) {
            auto& [name, next] = frames.back();
            const auto& targets = refs[name];
            if (next >= targets.size()) {
                on_path.erase(name);
                frames.pop_back();
                continue;
            }
            const std::string& target = targets[next++];
            if (target == m.name) {
                if (reported.insert(m.name).second)
                    sink.add(map_loc(m), "plug-in reference cycle through '", m.name, "'");
                continue;
            }
            if (on_path.insert(target).second) frames.emplace_back(target, 0);
        }
    }
}

void check_objects(const UcmModel& model, const ObjectModel& objects, IssueSink& sink) {
    for (const auto& [child, par] : objects.parent) {
        auto child_type = object_type(model, child);
        auto parent_type = object_type(model, par);
        if (!child_type) sink.add("object '" + child + "'", "unknown object");
        if (!parent_type) {
            sink.add("object '" + child + "'", "unknown parent object '", par, "'");
            continue;
        }
        if (parent_type == ObjectType::Responsibility || parent_type == ObjectType::Point)
            sink.add("object '" + child + "'", "parent '", par,
                     "' is a primitive object, not a container");
    }
    for (const auto& [child, par] : objects.parent) {
        std::set<std::string> visited{child};
        std::string cur = par;
        while (true) {
            if (!visited.insert(cur).second) {
                sink.add("object '" + child + "'", "containment cycle through '", cur, "'");
                break;
            }
            auto it = objects.parent.find(cur);
            if (it == objects.parent.end()) break;
            cur = it->second;
        }
    }
}

}  // namespace

ValidationReport validate_model(const UcmModel& model, const ObjectModel& objects) {
    ValidationReport report;
    IssueSink sink(report);

    check_maps(model, sink);
    check_components(model, sink);
    for (const auto& m : model.maps) {
        check_nodes(model, m, sink);
        check_edges(model, m, sink);
        for (const auto& n : m.nodes)
            if (n.stub) check_stub(model, m, n, sink);
    }
    check_plugin_cycles(model, sink);
    check_objects(model, objects, sink);
    return report;
}

}  // namespace ucm
