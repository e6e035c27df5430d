#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace motivic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct IllFormedHom : Error {
    using Error::Error;
};
struct NotACycle : Error {
    using Error::Error;
};
// Raised when a zig-zag lift fails even though the cycle precondition held;
// only possible on couples that violate the stair-step exactness assumptions.
struct LiftFailure : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct SchemaError : Error {
    using Error::Error;
};
struct UnknownObject : Error {
    using Error::Error;
};
struct UnknownClass : Error {
    using Error::Error;
};
struct UnknownGenerator : Error {
    using Error::Error;
};
struct TruncationOverflow : Error {
    using Error::Error;
};
struct NotConvenient : Error {
    using Error::Error;
};
struct MissingInducedMap : Error {
    using Error::Error;
};
struct InconsistentBoundary : Error {
    using Error::Error;
};

// Validation findings are data, not exceptions.
struct Violation {
    std::string rule;     // e.g. "convenience", "relation-respect", "exactness"
    std::string subject;  // offending id / position
    std::string detail;

    bool operator==(const Violation&) const = default;
};

}  // namespace motivic
