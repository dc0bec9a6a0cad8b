#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hazard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A malformed input record. Carries the 1-based line and offending field.
class ParseError : public Error {
public:
    ParseError(std::string path, std::size_t line, std::string field, const std::string& what);

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string path_;
    std::size_t line_;
    std::string field_;
};

} // namespace hazard
