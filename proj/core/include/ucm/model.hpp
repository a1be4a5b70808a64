#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ucm {

/// Tolerance for "these probabilities must sum to 1" checks.
inline constexpr double kProbabilityTolerance = 1e-9;

enum class NodeKind {
    Start,
    End,
    Responsibility,
    Stub,
    OrFork,
    OrJoin,
    AndFork,
    AndJoin,
};

const char* to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(const std::string& s);

/// A guard on an edge leaving an OR-fork: taken when `var == value`.
struct EdgeCondition {
    std::string var;
    bool value = true;

    bool operator==(const EdgeCondition&) const = default;
};

struct PluginBinding {
    std::string plugin;  // name of a non-root map
    double probability = 1.0;
    std::map<std::string, std::string> in;   // stub input -> plug-in start point
    std::map<std::string, std::string> out;  // plug-in end point -> stub output

    bool operator==(const PluginBinding&) const = default;
};

struct StubDetail {
    bool dynamic = false;
    std::vector<std::string> inputs;   // port order matches incoming edge order
    std::vector<std::string> outputs;  // port order matches outgoing edge order
    std::vector<PluginBinding> bindings;

    bool operator==(const StubDetail&) const = default;
};

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Responsibility;
    std::string component;  // empty = not bound to a component
    double trigger = 1.0;   // start points only
    std::optional<StubDetail> stub;

    bool operator==(const Node&) const = default;
};

struct Edge {
    std::string from;
    std::string to;
    double probability = 1.0;  // may differ from 1 only when leaving an OR-fork
    std::optional<EdgeCondition> condition;

    bool operator==(const Edge&) const = default;
};

struct MapGraph {
    std::string name;
    bool root = false;
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    const Node* find_node(const std::string& id) const;

    bool operator==(const MapGraph&) const = default;
};

struct Component {
    std::string name;
    std::string parent;  // empty = top level

    bool operator==(const Component&) const = default;
};

struct UcmModel {
    std::vector<MapGraph> maps;
    std::vector<Component> components;
    std::vector<std::string> variables;  // Boolean variables usable in conditions

    const MapGraph* root_map() const;
    const MapGraph* find_map(const std::string& name) const;

    bool operator==(const UcmModel&) const = default;
};

enum class ObjectType { Responsibility, Point, Plugin, Stub, Component };

const char* to_string(ObjectType type);

/// Type of the object `id` names in `model` (node, plug-in map, or component),
/// or nullopt if no such object exists. Forks and joins are not objects.
std::optional<ObjectType> object_type(const UcmModel& model, const std::string& id);

/// Containment tree over model objects. Objects without an entry are roots.
struct ObjectModel {
    std::map<std::string, std::string> parent;  // object id -> container id

    std::vector<std::string> children_of(const std::string& id) const;

    bool operator==(const ObjectModel&) const = default;
};

struct ValidationIssue {
    std::string where;  // locator such as "map 'ocs', node 'chk'"
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
};

/// Checks every structural invariant of the model plus the containment tree.
/// Violations are reported as data; this never throws.
ValidationReport validate_model(const UcmModel& model, const ObjectModel& objects = {});

/// Declaration-order association of a stub's incident edges with its ports:
/// the i-th incoming edge feeds inputs[i], the i-th outgoing edge continues
/// outputs[i]. Returns nullopt when the counts do not line up.
struct StubPortEdges {
    std::vector<std::size_t> input_edges;   // edge index per StubDetail.inputs entry
    std::vector<std::size_t> output_edges;  // edge index per StubDetail.outputs entry
};

std::optional<StubPortEdges> stub_port_edges(const MapGraph& map, const Node& stub);

}  // namespace ucm
