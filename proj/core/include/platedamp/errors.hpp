#pragma once

#include <stdexcept>
#include <string>

namespace platedamp {

/// Raised when an input violates a documented precondition (bad geometry,
/// point outside the plate, unsupported argument).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the solvers when a numerical step fails. `module()` names the
/// stage that failed so front ends can report where the pipeline broke.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

}  // namespace platedamp
