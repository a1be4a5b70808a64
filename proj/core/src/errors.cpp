#include "ucm/errors.hpp"

#include <sstream>

namespace ucm {

std::string to_string(const SourceLocation& loc) {
    return loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ", ";
        out += item;
    }
    return out.empty() ? "(none)" : out;
}

}  // namespace

IoError::IoError(const std::string& p) : Error("cannot read file '" + p + "'"), path(p) {}

SyntaxError::SyntaxError(SourceLocation w, std::string exp)
    : Error(to_string(w) + ": syntax error, expected " + exp),
      where(std::move(w)),
      expected(std::move(exp)) {}

UnknownReference::UnknownReference(std::string n, SourceLocation w)
    : Error(to_string(w) + ": unknown reference '" + n + "'"),
      name(std::move(n)),
      where(std::move(w)) {}

DuplicateId::DuplicateId(std::string n, SourceLocation w)
    : Error(to_string(w) + ": duplicate identifier '" + n + "'"),
      name(std::move(n)),
      where(std::move(w)) {}

UnknownStub::UnknownStub(std::string n) : Error("unknown stub '" + n + "'"), name(std::move(n)) {}

UnknownPlugin::UnknownPlugin(std::string s, std::string p)
    : Error("stub '" + s + "' has no plug-in '" + p + "'"),
      stub(std::move(s)),
      plugin(std::move(p)) {}

UnknownVariable::UnknownVariable(std::string n)
    : Error("unknown variable '" + n + "'"), name(std::move(n)) {}

DuplicateScenarioName::DuplicateScenarioName(std::string n)
    : Error("duplicate scenario name '" + n + "'"), name(std::move(n)) {}

UnknownObject::UnknownObject(std::string n)
    : Error("unknown object '" + n + "'"), name(std::move(n)) {}

CycleDetected::CycleDetected(std::string o)
    : Error("containment cycle through '" + o + "'"), object(std::move(o)) {}

MultipleParents::MultipleParents(std::string o)
    : Error("object '" + o + "' has more than one parent"), object(std::move(o)) {}

RecursivePlugin::RecursivePlugin(std::string m)
    : Error("plug-in map '" + m + "' transitively contains itself"), map(std::move(m)) {}

UnresolvedChoice::UnresolvedChoice(std::string s)
    : Error("no binding or condition decides the choice at state '" + s + "'"),
      state(std::move(s)) {}

ConditionConflict::ConditionConflict(std::string s, std::string detail)
    : Error("condition conflict at state '" + s + "': " + detail), state(std::move(s)) {}

LoopBoundExceeded::LoopBoundExceeded(std::string s)
    : Error("loop bound exceeded at state '" + s + "'"), state(std::move(s)) {}

PostConditionFailed::PostConditionFailed(std::vector<std::string> exp, std::vector<std::string> got)
    : Error("post-condition failed: expected end points " + join(exp) + "; reached " + join(got)),
      expected(std::move(exp)),
      reached(std::move(got)) {}

}  // namespace ucm
