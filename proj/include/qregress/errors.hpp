#pragma once

#include <stdexcept>
#include <string>

namespace qregress {

// Input failed a structural or physical invariant (CLI exit code 1).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Times passed out of order, or a negative duration.
class TimeOrderError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A query time that is not an integer multiple of the collision step.
class GridAlignmentError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Joint-mode state would exceed the configured amplitude budget.
class BudgetError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Input outside the numerically supported range (e.g. mat_exp norm cap).
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// File missing, unreadable, or malformed (CLI exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qregress
