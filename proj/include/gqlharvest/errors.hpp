#pragma once

#include <stdexcept>
#include <string>

namespace gqlharvest {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed SDL or query text. Carries a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, int line, int column)
        : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A field or argument references a type name that is not declared.
class ReferenceError : public Error {
public:
    ReferenceError(const std::string& what, std::string type_name)
        : Error(what), type_name_(std::move(type_name)) {}

    const std::string& type_name() const { return type_name_; }

private:
    std::string type_name_;
};

// Two type definitions share a name.
class DuplicateTypeError : public Error {
public:
    using Error::Error;
};

// A structured document does not have the expected envelope or member types.
class FormatError : public Error {
public:
    using Error::Error;
};

// Lookup of a field that is neither declared nor __typename.
class UnknownFieldError : public Error {
public:
    UnknownFieldError(const std::string& what, std::string path)
        : Error(what + (path.empty() ? "" : " (at " + path + ")")), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// A fragment spread names a fragment that is not defined in the document.
class UndefinedFragmentError : public Error {
public:
    using Error::Error;
};

// A variable is used in an argument but never declared.
class UndeclaredVariableError : public Error {
public:
    using Error::Error;
};

// Operation kind not handled by the requested pipeline step (e.g. mutations
// handed to oracle derivation).
class UnsupportedOperationError : public Error {
public:
    using Error::Error;
};

// Journal or snapshot write failure in the query store.
class StorageError : public Error {
public:
    using Error::Error;
};

}  // namespace gqlharvest
