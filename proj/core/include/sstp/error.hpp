#pragma once

#include <stdexcept>
#include <string>

namespace sstp {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed instance/solution text. Carries the 1-based input line.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Instance cannot be solved (e.g. terminals mutually unreachable).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

} // namespace sstp
