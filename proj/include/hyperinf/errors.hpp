#ifndef HYPERINF_ERRORS_HPP
#define HYPERINF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperinf {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyEdgeError : Error {
    using Error::Error;
};

struct DuplicateMemberError : Error {
    using Error::Error;
};

struct ThresholdOutOfRangeError : Error {
    using Error::Error;
};

struct UnknownNodeError : Error {
    using Error::Error;
};

struct UnknownIdError : Error {
    using Error::Error;
};

struct SizeMismatchError : Error {
    using Error::Error;
};

struct EdgeAlreadyActiveError : Error {
    using Error::Error;
};

struct NotIncidentError : Error {
    using Error::Error;
};

struct SameNodeError : Error {
    using Error::Error;
};

struct NotAFixedPointError : Error {
    using Error::Error;
};

struct NonConvergenceError : Error {
    using Error::Error;
};

struct DepthTooLargeError : Error {
    using Error::Error;
};

struct InvalidProbabilityError : Error {
    using Error::Error;
};

struct EdgeSizeTooLargeError : Error {
    using Error::Error;
};

/// Text-format parse failure; carries the 1-based line number in the message.
struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

struct UsageError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace hyperinf

#endif  // HYPERINF_ERRORS_HPP
