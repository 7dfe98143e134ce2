#pragma once

#include <stdexcept>
#include <string>

namespace miqp {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite : SolverError {
    explicit NotPositiveDefinite(const std::string& what = "matrix is not positive definite")
        : SolverError(what) {}
};

struct DimensionMismatch : SolverError {
    explicit DimensionMismatch(const std::string& what = "dimension mismatch")
        : SolverError(what) {}
};

struct LineSearchFailure : SolverError {
    explicit LineSearchFailure(const std::string& what = "projected Armijo line search failed")
        : SolverError(what) {}
};

struct NonDescentDirection : SolverError {
    explicit NonDescentDirection(const std::string& what = "direction is not a descent direction")
        : SolverError(what) {}
};

struct DepthExceeded : SolverError {
    explicit DepthExceeded(const std::string& what = "branching beyond the last integer variable")
        : SolverError(what) {}
};

struct ParseError : SolverError {
    using SolverError::SolverError;
};

struct PolishFailed : SolverError {
    using SolverError::SolverError;
};

struct BoxTooLarge : SolverError {
    explicit BoxTooLarge(const std::string& what = "enumeration box exceeds the assignment cap")
        : SolverError(what) {}
};

struct IterLimitExceeded : SolverError {
    explicit IterLimitExceeded(const std::string& what = "iteration limit exceeded")
        : SolverError(what) {}
};

}  // namespace miqp
