#include "ucm/importance.hpp"

#include <algorithm>

namespace ucm {

double scenario_importance(const ScenarioPath& path) {
    double product = path.trigger;
    for (const auto& t : path.transitions) product *= t.probability;
    return product;
}

double primitive_importance(const std::string& object, std::span<const ScenarioPath> paths,
                            std::span<const double> importances) {
    double sum = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        auto it = paths[i].visits.find(object);
        if (it != paths[i].visits.end()) sum += importances[i] * it->second;
    }
    return sum;
}

double container_importance(const std::string& container, const ObjectModel& objects,
                            const std::map<std::string, double>& primitives) {
    double sum = 0.0;
    for (const auto& child : objects.children_of(container)) {
        auto it = primitives.find(child);
        if (it != primitives.end()) sum += it->second;
        else sum += container_importance(child, objects, primitives);
    }
    return sum;
}

namespace {

std::string group_of(ObjectType type) {
    switch (type) {
        case ObjectType::Responsibility:
        case ObjectType::Point: return "responsibility";  // primitives rank together
        case ObjectType::Plugin: return "plugin";
        case ObjectType::Stub: return "stub";
        case ObjectType::Component: return "component";
    }
    return "?";
}

}  // namespace

ImportanceReport build_report(const UcmModel& model, const ObjectModel& objects,
                              std::span<const ScenarioPath> paths) {
    ImportanceReport report;

    std::vector<double> importances;
    for (const auto& path : paths) {
        double value = scenario_importance(path);
        report.scenario_order.push_back(path.name);
        report.scenario_importance[path.name] = value;
        importances.push_back(value);
    }

    // Object universe: every node that is an object, every plug-in map, every
    // component. Forks and joins are structure, not objects.
    for (const auto& m : model.maps) {
        if (!m.root) report.object_types[m.name] = ObjectType::Plugin;
        for (const auto& n : m.nodes)
            if (auto type = object_type(model, n.id)) report.object_types[n.id] = *type;
    }
    for (const auto& c : model.components) report.object_types[c.name] = ObjectType::Component;

    std::map<std::string, double> primitives;
    for (const auto& [id, type] : report.object_types)
        if (type == ObjectType::Responsibility || type == ObjectType::Point)
            primitives[id] = primitive_importance(id, paths, importances);

    for (const auto& [id, type] : report.object_types) {
        if (type == ObjectType::Responsibility || type == ObjectType::Point)
            report.object_importance[id] = primitives[id];
        else
            report.object_importance[id] = container_importance(id, objects, primitives);
    }

    for (const auto& [id, type] : report.object_types)
        report.rankings[group_of(type)].push_back(id);
    for (auto& [group, ids] : report.rankings) {
        std::stable_sort(ids.begin(), ids.end(), [&](const auto& a, const auto& b) {
            double ia = report.object_importance.at(a);
            double ib = report.object_importance.at(b);
            if (ia != ib) return ia > ib;
            return a < b;
        });
    }

    report.percents = percent_by_type(report);
    return report;
}

std::vector<std::string> filter_overall(const ImportanceReport& report, double threshold) {
    std::vector<std::string> names;
    for (const auto& [name, value] : report.scenario_importance)
        if (value >= threshold) names.push_back(name);
    std::stable_sort(names.begin(), names.end(), [&](const auto& a, const auto& b) {
        double ia = report.scenario_importance.at(a);
        double ib = report.scenario_importance.at(b);
        if (ia != ib) return ia > ib;
        return a < b;
    });
    return names;
}

std::vector<std::string> filter_alternative(std::span<const ScenarioPath> paths,
                                            double threshold) {
    std::vector<std::pair<std::string, double>> kept;
    for (const auto& path : paths) {
        bool passes = true;
        for (const auto& t : path.transitions) passes &= t.probability >= threshold;
        if (passes) kept.emplace_back(path.name, scenario_importance(path));
    }
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> names;
    for (const auto& [name, _] : kept) names.push_back(name);
    return names;
}

std::map<std::string, std::map<std::string, double>> percent_by_type(
    const ImportanceReport& report) {
    std::map<std::string, std::map<std::string, double>> percents;
    for (const auto& [group, ids] : report.rankings) {
        double total = 0.0;
        for (const auto& id : ids) total += report.object_importance.at(id);
        if (total == 0.0) continue;
        for (const auto& id : ids)
            percents[group][id] = 100.0 * report.object_importance.at(id) / total;
    }
    return percents;
}

}  // namespace ucm
