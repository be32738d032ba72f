#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace trispline {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidMesh : public Error {
public:
    using Error::Error;
};

class DegenerateTriangle : public Error {
public:
    using Error::Error;
};

class DuplicateTriangle : public Error {
public:
    using Error::Error;
};

class TransversalOnEdge : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ContinuityCheckFailed : public Error {
public:
    using Error::Error;
};

/// Raised when a point is not covered by any closed triangle. `record()` names
/// the offending data record when the point came from a dataset.
class PointOutsideMesh : public Error {
public:
    explicit PointOutsideMesh(const std::string& what, std::optional<std::size_t> record = std::nullopt)
        : Error(what), record_(record) {}

    std::optional<std::size_t> record() const { return record_; }

private:
    std::optional<std::size_t> record_;
};

}  // namespace trispline
