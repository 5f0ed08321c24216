#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meancomp {

// Error taxonomy shared by the whole library. Every failure surfaces as a
// typed exception; nothing returns NaN silently. The C API maps ErrorKind
// onto mc_status codes one to one.
enum class ErrorKind {
    parse,          // DSL text does not parse
    domain,         // evaluation outside a function's domain
    overflow,       // finite inputs produced a non-finite value
    invalid,        // bad argument / violated precondition
    certification,  // monotonicity/positivity certification failed
    inversion,      // generator inversion could not bracket or converge
    config,         // problem configuration is malformed
    internal        // dual-route consistency check failed (a bug, not user error)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error(ErrorKind::parse,
                "parse error at " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error(ErrorKind::domain, message) {}
};

class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& message) : Error(ErrorKind::overflow, message) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message) : Error(ErrorKind::invalid, message) {}
};

class CertificationError : public Error {
public:
    explicit CertificationError(const std::string& message)
        : Error(ErrorKind::certification, message) {}
};

class InversionError : public Error {
public:
    InversionError(const std::string& message, double searched_lo, double searched_hi)
        : Error(ErrorKind::inversion, message), lo_(searched_lo), hi_(searched_hi) {}

    double searched_lo() const noexcept { return lo_; }
    double searched_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error(ErrorKind::config, message) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& message) : Error(ErrorKind::internal, message) {}
};

}  // namespace meancomp
