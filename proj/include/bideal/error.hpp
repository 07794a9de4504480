#pragma once

#include <stdexcept>
#include <string>

namespace bideal {

/// Failure categories, mapped one-to-one onto CLI exit codes.
enum class ErrorKind {
    Parse,          // exit 1
    NotLimit,       // exit 2
    FiniteSchema,   // exit 2
    NotASubset,     // exit 2
    UnknownContainment,  // exit 2
    QuotientOverflow,    // exit 2
    NotPositive,    // exit 2
    Invariant,      // exit 3
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    const char* name() const noexcept {
        switch (kind_) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::NotLimit: return "NotLimit";
        case ErrorKind::FiniteSchema: return "FiniteSchema";
        case ErrorKind::NotASubset: return "NotASubset";
        case ErrorKind::UnknownContainment: return "UnknownContainment";
        case ErrorKind::QuotientOverflow: return "QuotientOverflow";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::Invariant: return "InvariantViolation";
        }
        return "Error";
    }

    int exitCode() const noexcept {
        switch (kind_) {
        case ErrorKind::Parse: return 1;
        case ErrorKind::Invariant: return 3;
        default: return 2;
        }
    }

private:
    ErrorKind kind_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};
struct NotLimit : Error {
    explicit NotLimit(const std::string& w) : Error(ErrorKind::NotLimit, w) {}
};
struct FiniteSchema : Error {
    explicit FiniteSchema(const std::string& w) : Error(ErrorKind::FiniteSchema, w) {}
};
/// The query could not be shown to lie inside the compiled target.
struct ContainmentError : Error {
    using Error::Error;
};
struct NotASubset : ContainmentError {
    explicit NotASubset(const std::string& w) : ContainmentError(ErrorKind::NotASubset, w) {}
};
struct UnknownContainment : ContainmentError {
    explicit UnknownContainment(const std::string& w)
        : ContainmentError(ErrorKind::UnknownContainment, w) {}
};
struct QuotientOverflow : Error {
    explicit QuotientOverflow(const std::string& w)
        : Error(ErrorKind::QuotientOverflow, w) {}
};
struct NotPositive : Error {
    explicit NotPositive(const std::string& w) : Error(ErrorKind::NotPositive, w) {}
};
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& w) : Error(ErrorKind::Invariant, w) {}
};

}  // namespace bideal
