#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tristat {

// Bad input data (unreadable files, malformed edge lists, invalid specs).
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed edge-list line; carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A computed quantity violated an invariant. The CLI maps this to exit code 3.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Enumeration aborted because it passed the configured triangle cap.
class TriangleLimitExceeded : public std::runtime_error {
public:
    explicit TriangleLimitExceeded(std::uint64_t limit)
        : std::runtime_error("triangle enumeration exceeded the configured cap of " +
                             std::to_string(limit) + " triangles") {}
};

}  // namespace tristat
