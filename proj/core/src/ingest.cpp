#include "ucm/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ucm {

namespace {

using nlohmann::json;

SourceLocation loc_at(std::string_view text, const std::string& file, std::size_t byte_pos) {
    SourceLocation loc;
    loc.file = file;
    for (std::size_t i = 0; i < byte_pos && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

// Best-effort location: first occurrence of `token` as a quoted string.
SourceLocation locate(std::string_view text, const std::string& file, const std::string& token) {
    auto pos = text.find('"' + token + '"');
    if (pos == std::string_view::npos) return SourceLocation{file, 1, 1};
    return loc_at(text, file, pos);
}

json parse_json(std::string_view text, const std::string& file, const char* top_member) {
    bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
    if (blank) throw SyntaxError(SourceLocation{file, 1, 1}, top_member);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(loc_at(text, file, e.byte > 0 ? e.byte - 1 : 0), "valid JSON");
    }
}

struct Ctx {
    std::string_view text;
    std::string file;

    [[noreturn]] void fail(const std::string& near_token, const std::string& expected) const {
        throw SyntaxError(locate(text, file, near_token), expected);
    }
};

double number_or(const json& obj, const char* key, double fallback, const Ctx& ctx,
                 const std::string& near_token) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) ctx.fail(near_token, std::string("number for '") + key + "'");
    return obj[key].get<double>();
}

std::string string_member(const json& obj, const char* key, const Ctx& ctx,
                          const std::string& near_token) {
    if (!obj.contains(key) || !obj[key].is_string())
        ctx.fail(near_token, std::string("string member '") + key + "'");
    return obj[key].get<std::string>();
}

Node parse_node(const json& jn, const Ctx& ctx) {
    if (!jn.is_object()) ctx.fail("nodes", "node object");
    Node node;
    node.id = string_member(jn, "id", ctx, "nodes");
    std::string kind = string_member(jn, "kind", ctx, node.id);
    auto parsed = node_kind_from_string(kind);
    if (!parsed) ctx.fail(node.id, "node kind, got '" + kind + "'");
    node.kind = *parsed;
    if (jn.contains("component")) node.component = string_member(jn, "component", ctx, node.id);
    node.trigger = number_or(jn, "trigger", 1.0, ctx, node.id);

    if (jn.contains("stub")) {
        const json& js = jn["stub"];
        if (!js.is_object()) ctx.fail(node.id, "stub object");
        StubDetail stub;
        if (!js.contains("dynamic") || !js["dynamic"].is_boolean())
            ctx.fail(node.id, "boolean 'dynamic' in stub");
        stub.dynamic = js["dynamic"].get<bool>();
        for (const char* key : {"inputs", "outputs"}) {
            if (!js.contains(key) || !js[key].is_array())
                ctx.fail(node.id, std::string("array '") + key + "' in stub");
            for (const auto& port : js[key]) {
                if (!port.is_string()) ctx.fail(node.id, "string port name");
                (key[0] == 'i' ? stub.inputs : stub.outputs).push_back(port.get<std::string>());
            }
        }
        if (!js.contains("bindings") || !js["bindings"].is_array())
            ctx.fail(node.id, "array 'bindings' in stub");
        for (const auto& jb : js["bindings"]) {
            PluginBinding binding;
            binding.plugin = string_member(jb, "plugin", ctx, node.id);
            binding.probability = number_or(jb, "probability", 1.0, ctx, binding.plugin);
            for (const char* key : {"in", "out"}) {
                if (!jb.contains(key)) continue;
                if (!jb[key].is_object()) ctx.fail(node.id, std::string("object '") + key + "'");
                for (const auto& [k, v] : jb[key].items()) {
                    if (!v.is_string()) ctx.fail(node.id, "string port mapping");
                    (key[0] == 'i' ? binding.in : binding.out)[k] = v.get<std::string>();
                }
            }
            stub.bindings.push_back(std::move(binding));
        }
        node.stub = std::move(stub);
    }
    return node;
}

Edge parse_edge(const json& je, const Ctx& ctx) {
    if (!je.is_object()) ctx.fail("edges", "edge object");
    Edge edge;
    edge.from = string_member(je, "from", ctx, "edges");
    edge.to = string_member(je, "to", ctx, edge.from);
    edge.probability = number_or(je, "probability", 1.0, ctx, edge.from);
    if (je.contains("condition")) {
        const json& jc = je["condition"];
        if (!jc.is_object() || !jc.contains("var") || !jc.contains("value") ||
            !jc["value"].is_boolean())
            ctx.fail(edge.from, "condition with 'var' and boolean 'value'");
        edge.condition = EdgeCondition{jc["var"].get<std::string>(), jc["value"].get<bool>()};
    }
    return edge;
}

}  // namespace

UcmModel parse_model(std::string_view text, const std::string& filename) {
    Ctx ctx{text, filename};
    json doc = parse_json(text, filename, "'maps'");
    if (!doc.is_object() || !doc.contains("maps") || !doc["maps"].is_array())
        throw SyntaxError(SourceLocation{filename, 1, 1}, "'maps'");

    UcmModel model;
    for (const auto& jm : doc["maps"]) {
        MapGraph map;
        map.name = string_member(jm, "name", ctx, "maps");
        if (jm.contains("root")) {
            if (!jm["root"].is_boolean()) ctx.fail(map.name, "boolean 'root'");
            map.root = jm["root"].get<bool>();
        }
        if (jm.contains("nodes"))
            for (const auto& jn : jm["nodes"]) map.nodes.push_back(parse_node(jn, ctx));
        if (jm.contains("edges"))
            for (const auto& je : jm["edges"]) map.edges.push_back(parse_edge(je, ctx));
        model.maps.push_back(std::move(map));
    }
    if (doc.contains("components")) {
        if (!doc["components"].is_array()) ctx.fail("components", "array 'components'");
        for (const auto& jc : doc["components"]) {
            Component component;
            component.name = string_member(jc, "name", ctx, "components");
            if (jc.contains("parent")) component.parent = string_member(jc, "parent", ctx, component.name);
            model.components.push_back(std::move(component));
        }
    }
    if (doc.contains("variables")) {
        if (!doc["variables"].is_array()) ctx.fail("variables", "array 'variables'");
        for (const auto& jv : doc["variables"]) {
            if (!jv.is_string()) ctx.fail("variables", "string variable name");
            model.variables.push_back(jv.get<std::string>());
        }
    }

    // Duplicate declarations are a parse error; everything subtler is left to
    // validate_model so files with semantic issues still load for inspection.
    std::set<std::string> ids;
    for (const auto& m : model.maps)
        for (const auto& n : m.nodes)
            if (!ids.insert(n.id).second) throw DuplicateId(n.id, locate(text, filename, n.id));
    for (const auto& m : model.maps)
        for (const auto& e : m.edges) {
            if (!m.find_node(e.from)) throw UnknownReference(e.from, locate(text, filename, e.from));
            if (!m.find_node(e.to)) throw UnknownReference(e.to, locate(text, filename, e.to));
        }
    return model;
}

std::vector<ScenarioDefinition> parse_scenarios(std::string_view text, const UcmModel& model,
                                                const std::string& filename) {
    Ctx ctx{text, filename};
    json doc = parse_json(text, filename, "a scenario array");
    if (!doc.is_array()) throw SyntaxError(SourceLocation{filename, 1, 1}, "a scenario array");

    const MapGraph* root = model.root_map();
    std::vector<ScenarioDefinition> defs;
    std::set<std::string> names;
    for (const auto& jd : doc) {
        ScenarioDefinition def;
        def.name = string_member(jd, "name", ctx, "name");
        if (!names.insert(def.name).second) throw DuplicateScenarioName(def.name);
        def.start = string_member(jd, "start", ctx, def.name);

        const Node* start = root ? root->find_node(def.start) : nullptr;
        if (!start || start->kind != NodeKind::Start)
            throw UnknownReference(def.start, locate(text, filename, def.start));

        if (jd.contains("bindings")) {
            if (!jd["bindings"].is_object()) ctx.fail(def.name, "object 'bindings'");
            for (const auto& [stub_id, jplugin] : jd["bindings"].items()) {
                if (!jplugin.is_string()) ctx.fail(def.name, "string plug-in name");
                const Node* stub = nullptr;
                for (const auto& m : model.maps)
                    if (const Node* n = m.find_node(stub_id)) stub = n;
                if (!stub || stub->kind != NodeKind::Stub) throw UnknownStub(stub_id);
                std::string plugin = jplugin.get<std::string>();
                bool bound = false;
                for (const auto& b : stub->stub->bindings) bound |= b.plugin == plugin;
                if (!bound) throw UnknownPlugin(stub_id, plugin);
                def.bindings[stub_id] = plugin;
            }
        }
        if (jd.contains("conditions")) {
            if (!jd["conditions"].is_object()) ctx.fail(def.name, "object 'conditions'");
            for (const auto& [var, jvalue] : jd["conditions"].items()) {
                if (!jvalue.is_boolean()) ctx.fail(def.name, "boolean condition value");
                if (std::find(model.variables.begin(), model.variables.end(), var) ==
                    model.variables.end())
                    throw UnknownVariable(var);
                def.conditions[var] = jvalue.get<bool>();
            }
        }
        if (jd.contains("post")) {
            if (!jd["post"].is_array()) ctx.fail(def.name, "array 'post'");
            for (const auto& jp : jd["post"]) {
                if (!jp.is_string()) ctx.fail(def.name, "string end point id");
                std::string end_id = jp.get<std::string>();
                const Node* end = nullptr;
                for (const auto& m : model.maps)
                    if (const Node* n = m.find_node(end_id)) end = n;
                if (!end || end->kind != NodeKind::End)
                    throw UnknownReference(end_id, locate(text, filename, end_id));
                def.post.push_back(end_id);
            }
        }
        defs.push_back(std::move(def));
    }
    return defs;
}

ObjectModel parse_object_model(std::string_view text, const UcmModel& model,
                               const std::string& filename) {
    Ctx ctx{text, filename};
    json doc = parse_json(text, filename, "an object-model array");
    if (!doc.is_array()) throw SyntaxError(SourceLocation{filename, 1, 1}, "an object-model array");

    ObjectModel objects;
    for (const auto& je : doc) {
        std::string object = string_member(je, "object", ctx, "object");
        std::string parent = string_member(je, "parent", ctx, object);
        if (!object_type(model, object)) throw UnknownObject(object);
        if (!object_type(model, parent)) throw UnknownObject(parent);
        if (objects.parent.count(object)) throw MultipleParents(object);
        objects.parent[object] = parent;
    }
    for (const auto& [child, par] : objects.parent) {
        std::set<std::string> visited{child};
        std::string cur = par;
        while (true) {
            if (!visited.insert(cur).second) throw CycleDetected(cur);
            auto it = objects.parent.find(cur);
            if (it == objects.parent.end()) break;
            cur = it->second;
        }
    }
    return objects;
}

std::string serialize_model(const UcmModel& model) {
    json doc;
    doc["maps"] = json::array();
    for (const auto& m : model.maps) {
        json jm;
        jm["name"] = m.name;
        if (m.root) jm["root"] = true;
        jm["nodes"] = json::array();
        for (const auto& n : m.nodes) {
            json jn;
            jn["id"] = n.id;
            jn["kind"] = to_string(n.kind);
            if (!n.component.empty()) jn["component"] = n.component;
            if (n.trigger != 1.0) jn["trigger"] = n.trigger;
            if (n.stub) {
                json js;
                js["dynamic"] = n.stub->dynamic;
                js["inputs"] = n.stub->inputs;
                js["outputs"] = n.stub->outputs;
                js["bindings"] = json::array();
                for (const auto& b : n.stub->bindings) {
                    json jb;
                    jb["plugin"] = b.plugin;
                    jb["probability"] = b.probability;
                    jb["in"] = b.in;
                    jb["out"] = b.out;
                    js["bindings"].push_back(std::move(jb));
                }
                jn["stub"] = std::move(js);
            }
            jm["nodes"].push_back(std::move(jn));
        }
        jm["edges"] = json::array();
        for (const auto& e : m.edges) {
            json je;
            je["from"] = e.from;
            je["to"] = e.to;
            if (e.probability != 1.0) je["probability"] = e.probability;
            if (e.condition)
                je["condition"] = {{"var", e.condition->var}, {"value", e.condition->value}};
            jm["edges"].push_back(std::move(je));
        }
        doc["maps"].push_back(std::move(jm));
    }
    doc["components"] = json::array();
    for (const auto& c : model.components) {
        json jc;
        jc["name"] = c.name;
        if (!c.parent.empty()) jc["parent"] = c.parent;
        doc["components"].push_back(std::move(jc));
    }
    doc["variables"] = model.variables;
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

UcmModel load_model(const std::string& path) { return parse_model(read_file(path), path); }

std::vector<ScenarioDefinition> load_scenarios(const std::string& path, const UcmModel& model) {
    return parse_scenarios(read_file(path), model, path);
}

ObjectModel load_object_model(const std::string& path, const UcmModel& model) {
    return parse_object_model(read_file(path), model, path);
}

}  // namespace ucm
