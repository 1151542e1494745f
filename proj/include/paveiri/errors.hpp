#ifndef PAVEIRI_ERRORS_HPP
#define PAVEIRI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace paveiri {

// Bad argument values, dimension mismatches, out-of-range bins.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A record or row violates a data invariant (negative length, bad enum, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// File header/columns or model fingerprint do not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable/unwritable paths, malformed files.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation was called in a state it does not support (e.g. Reuse
// standardization without fitted statistics).
class StateError : public std::runtime_error {
public:
    explicit StateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Training cannot proceed (single-class input, empty training set).
class TrainingError : public std::runtime_error {
public:
    explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace paveiri

#endif  // PAVEIRI_ERRORS_HPP
