#pragma once

#include <stdexcept>
#include <string>

namespace subldpc {

/// Operand dimensions do not line up.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Constructor or operation parameter violates a stated precondition.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numeric argument outside its admissible range.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A matrix that must be invertible is singular.
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Randomized construction exhausted its retry budget.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exhaustive routine invoked on an instance beyond its size bound.
struct InstanceTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace subldpc
