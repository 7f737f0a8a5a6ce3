#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace treefloer {

enum class ErrorKind {
    MalformedInput,
    ArcMultiplicity,
    Disconnected,
    EmptyDiagram,
    InternalGeometry,
    WeightConflict,
    NotGeneric,
    NonGenericWeights,
    InterleavingViolation,
    NotSingleCircle,
    DivideByZero,
    NotDivisible,
    CheckFailed,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a module tag and an error kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& what)
        : std::runtime_error(what), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

/// Process exit code for an error: 1 for bad input, 2 for a non-generic
/// weight function, 3 for internal failures.
int exit_code(ErrorKind kind);

} // namespace treefloer
