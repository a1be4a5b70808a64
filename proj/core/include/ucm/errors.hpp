#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ucm {

struct SourceLocation {
    std::string file = "<memory>";
    int line = 1;
    int column = 1;
};

std::string to_string(const SourceLocation& loc);

/// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& path);
    std::string path;
};

class SyntaxError : public Error {
public:
    SyntaxError(SourceLocation where, std::string expected);
    SourceLocation where;
    std::string expected;
};

class UnknownReference : public Error {
public:
    UnknownReference(std::string name, SourceLocation where);
    std::string name;
    SourceLocation where;
};

class DuplicateId : public Error {
public:
    DuplicateId(std::string name, SourceLocation where);
    std::string name;
    SourceLocation where;
};

class UnknownStub : public Error {
public:
    explicit UnknownStub(std::string name);
    std::string name;
};

class UnknownPlugin : public Error {
public:
    UnknownPlugin(std::string stub, std::string plugin);
    std::string stub;
    std::string plugin;
};

class UnknownVariable : public Error {
public:
    explicit UnknownVariable(std::string name);
    std::string name;
};

class DuplicateScenarioName : public Error {
public:
    explicit DuplicateScenarioName(std::string name);
    std::string name;
};

class UnknownObject : public Error {
public:
    explicit UnknownObject(std::string name);
    std::string name;
};

class CycleDetected : public Error {
public:
    explicit CycleDetected(std::string object);
    std::string object;
};

class MultipleParents : public Error {
public:
    explicit MultipleParents(std::string object);
    std::string object;
};

class RecursivePlugin : public Error {
public:
    explicit RecursivePlugin(std::string map);
    std::string map;
};

class UnresolvedChoice : public Error {
public:
    explicit UnresolvedChoice(std::string state);
    std::string state;
};

class ConditionConflict : public Error {
public:
    ConditionConflict(std::string state, std::string detail);
    std::string state;
};

class LoopBoundExceeded : public Error {
public:
    explicit LoopBoundExceeded(std::string state);
    std::string state;
};

class PostConditionFailed : public Error {
public:
    PostConditionFailed(std::vector<std::string> expected, std::vector<std::string> reached);
    std::vector<std::string> expected;
    std::vector<std::string> reached;
};

}  // namespace ucm
