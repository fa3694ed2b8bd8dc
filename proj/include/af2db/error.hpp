#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace af2db {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised by the exhaustive solvers when an input is larger than the configured cap.
class CapExceeded : public Error {
public:
    CapExceeded(std::size_t size, std::size_t cap)
        : Error("enumeration cap exceeded: " + std::to_string(size) + " elements, cap is " +
                std::to_string(cap)),
          size_(size),
          cap_(cap) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t size_;
    std::size_t cap_;
};

} // namespace af2db
