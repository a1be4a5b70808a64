#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ucm/errors.hpp"
#include "ucm/model.hpp"
#include "ucm/scenario.hpp"

namespace ucm {

/// Parses a model file (UTF-8 JSON). Throws SyntaxError, UnknownReference,
/// or DuplicateId with a best-effort source location.
UcmModel parse_model(std::string_view text, const std::string& filename = "<memory>");

/// Parses a scenario file against an already-parsed model. Throws
/// UnknownStub, UnknownPlugin, UnknownVariable, DuplicateScenarioName,
/// UnknownReference (bad start point), or SyntaxError.
std::vector<ScenarioDefinition> parse_scenarios(std::string_view text, const UcmModel& model,
                                                const std::string& filename = "<memory>");

/// Parses an object-model file (containment entries). Throws UnknownObject,
/// CycleDetected, MultipleParents, or SyntaxError.
ObjectModel parse_object_model(std::string_view text, const UcmModel& model,
                               const std::string& filename = "<memory>");

/// Canonical JSON serialization; parse_model(serialize_model(m)) is
/// structurally identical to m.
std::string serialize_model(const UcmModel& model);

// File-reading conveniences; throw IoError when the file cannot be read.
UcmModel load_model(const std::string& path);
std::vector<ScenarioDefinition> load_scenarios(const std::string& path, const UcmModel& model);
ObjectModel load_object_model(const std::string& path, const UcmModel& model);

std::string read_file(const std::string& path);

}  // namespace ucm
