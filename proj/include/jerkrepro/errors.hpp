#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace jerkrepro {

/// Root of every error this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument or parameter violates its precondition (a <= 0, h == 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configuration document or option set is invalid.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Integration produced a non-finite state. Carries the last time at which
/// the state was still finite.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, double last_valid_time)
        : Error(what + " (last valid time " + std::to_string(last_valid_time) + ")"),
          last_valid_time_(last_valid_time) {}

    double last_valid_time() const noexcept { return last_valid_time_; }

private:
    double last_valid_time_;
};

/// Malformed trace input. `line()` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Timestamps not strictly increasing.
class NonMonotoneTimeError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Fewer than two samples.
class InsufficientDataError : public ParseError {
public:
    using ParseError::ParseError;
};

/// SPICE export without a time-column header.
class MissingHeaderError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Series lengths or grids disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// NRMSE denominator is zero. `prefix()` names the failing cumulative window
/// (1-based) when the failure came from a windowed computation.
class DegenerateDataError : public Error {
public:
    explicit DegenerateDataError(const std::string& what,
                                 std::optional<std::size_t> prefix = std::nullopt)
        : Error(what), prefix_(prefix) {}

    std::optional<std::size_t> prefix() const noexcept { return prefix_; }

private:
    std::optional<std::size_t> prefix_;
};

/// Traces share no nondegenerate time interval.
class NoOverlapError : public Error {
public:
    using Error::Error;
};

/// A resampling query falls outside the trace domain.
class ExtrapolationError : public Error {
public:
    using Error::Error;
};

/// Two trajectories coincide somewhere in the fit range, so ln(separation) is undefined.
class DegenerateSeparationError : public Error {
public:
    using Error::Error;
};

}  // namespace jerkrepro
