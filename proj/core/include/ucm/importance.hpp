#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ucm/model.hpp"
#include "ucm/scenario.hpp"

namespace ucm {

/// Importance of a scenario: product of its transition probabilities times
/// the trigger probability of its start point.
double scenario_importance(const ScenarioPath& path);

/// Importance of a primitive object: sum over scenarios of the scenario's
/// importance times the object's visit count in that scenario.
double primitive_importance(const std::string& object, std::span<const ScenarioPath> paths,
                            std::span<const double> importances);

/// Importance of a container: sum of its direct children's importances,
/// recursing into child containers. Leaf values come from `primitives`
/// (absent leaves count 0).
double container_importance(const std::string& container, const ObjectModel& objects,
                            const std::map<std::string, double>& primitives);

/// Importance values for every scenario and every object of the model,
/// with rankings and per-group percentages.
///
/// Ranking/percent groups follow the usage-model reporting convention:
/// "responsibility" covers all primitive objects (responsibilities and
/// start/end points ranked together), then "plugin", "stub", "component".
/// object_types still records each object's exact type.
struct ImportanceReport {
    std::vector<std::string> scenario_order;  // definition order
    std::map<std::string, double> scenario_importance;
    std::map<std::string, double> object_importance;
    std::map<std::string, ObjectType> object_types;
    std::map<std::string, std::vector<std::string>> rankings;  // group -> ids, importance desc
    std::map<std::string, std::map<std::string, double>> percents;  // group -> id -> percent
};

ImportanceReport build_report(const UcmModel& model, const ObjectModel& objects,
                              std::span<const ScenarioPath> paths);

/// Scenarios whose overall importance is >= threshold, importance descending.
std::vector<std::string> filter_overall(const ImportanceReport& report, double threshold);

/// Scenarios whose every transition probability is >= threshold, importance
/// descending.
std::vector<std::string> filter_alternative(std::span<const ScenarioPath> paths, double threshold);

/// Per group: object -> 100 * importance / group total. Groups whose total is
/// zero yield no entries.
std::map<std::string, std::map<std::string, double>> percent_by_type(const ImportanceReport& report);

}  // namespace ucm
