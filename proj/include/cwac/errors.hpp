#pragma once

#include <stdexcept>
#include <string>

namespace cwac {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (ragged rows, bad quoting).
class ParseError : public Error {
public:
    using Error::Error;
};

// Attribute/class layout problems (bad class column, no non-class attribute).
class SchemaError : public Error {
public:
    using Error::Error;
};

// An argument outside its documented range.
class ParameterError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

// Non-numeric cell found where a number was required.
class ConversionError : public Error {
public:
    using Error::Error;
};

// Two objects that must describe the same data do not (e.g. hub weights
// sized for a different dataset).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Confidence of an antecedent that no transaction supports.
class UndefinedConfidenceError : public Error {
public:
    using Error::Error;
};

// Enumeration or candidate generation exceeded its configured budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Wraps a module error with the pipeline stage it escaped from.
class StageError : public Error {
public:
    StageError(const std::string& stage, const std::string& msg)
        : Error(stage + ": " + msg), stage_(stage) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace cwac
