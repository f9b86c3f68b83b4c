#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace discont {

/// Caller supplied something outside an operation's domain (bad size,
/// out-of-grid pixel, malformed file). The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed image data; carries the byte offset where parsing stopped.
class FormatError : public InputError {
public:
    FormatError(const std::string& what, std::size_t offset)
        : InputError(what + " (at byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Projection requested for a point on the focal plane z = 0.
class FocalPlaneError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace discont
