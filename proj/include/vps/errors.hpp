#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vps {

/// Base class for all workbench errors that are not plain precondition
/// violations (those use std::invalid_argument / std::domain_error).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A desk-scale guard rail was hit. Carries the cap name and the CLI flag
/// that raises it.
class CapExceeded : public Error {
public:
    CapExceeded(std::string cap, std::string flag, std::size_t limit, const std::string& detail)
        : Error(cap + " exceeded (limit " + std::to_string(limit) + ", raise with " + flag +
                "): " + detail),
          cap_(std::move(cap)), flag_(std::move(flag)), limit_(limit) {}

    const std::string& cap() const noexcept { return cap_; }
    const std::string& flag() const noexcept { return flag_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::string cap_;
    std::string flag_;
    std::size_t limit_;
};

/// Oracle answers, transcripts or tables that contradict each other.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// The input realizes a sign condition that an incomplete table lacks.
class IncompleteTableError : public Error {
public:
    using Error::Error;
};

} // namespace vps
