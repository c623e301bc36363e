#ifndef EMTOR_ERRORS_HPP
#define EMTOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace emtor {

// Base class for all library errors.
class EmtorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent input data (CLI exit code 2).
class ValidationError : public EmtorError {
public:
    using EmtorError::EmtorError;
};

// Internal consistency failure, e.g. two methods disagree (CLI exit code 3).
class ConsistencyError : public EmtorError {
public:
    using EmtorError::EmtorError;
};

class TruncationExceeded : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// d composed with d is not zero; signals a sign-convention bug upstream.
class CompositionNotZero : public ConsistencyError {
public:
    using ConsistencyError::ConsistencyError;
};

class UnknownGroup : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonSimplicialFan : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidFiltration : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ImpureInput : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonSimplyConnectedBase : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SeriesModuleMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace emtor

#endif
