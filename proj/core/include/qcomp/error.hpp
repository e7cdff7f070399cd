#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcomp {

enum class ErrorCode {
    InvalidArgument,
    UnsupportedKind,
    NonInvertible,
    Parse,
    Validation,
    UnresolvedCall,
    Recursion,
    SynthesisFailure,
    Capacity,
    Backend,
    Compile,
};

/// Base exception for every failure raised by the toolchain.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + message), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace qcomp
