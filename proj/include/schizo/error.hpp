#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schizo {

/// An argument violated an operation's precondition.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An identity that must hold by construction did not.
class consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A block-length formula produced a non-positive length: the pattern is exhausted.
class degenerate_instance : public std::runtime_error {
public:
    degenerate_instance(std::size_t block, const std::string& what)
        : std::runtime_error(what), block_(block) {}

    [[nodiscard]] std::size_t block() const noexcept { return block_; }

private:
    std::size_t block_;
};

/// The computed expansion is too short for the requested comparison.
class insufficient_precision : public std::runtime_error {
public:
    insufficient_precision(std::size_t required, std::size_t available)
        : std::runtime_error("insufficient precision: need " + std::to_string(required) +
                             " significand digits, have " + std::to_string(available)),
          required_(required) {}

    [[nodiscard]] std::size_t required() const noexcept { return required_; }

private:
    std::size_t required_;
};

namespace detail {

inline void require(bool condition, const char* message) {
    if (!condition) {
        throw precondition_error(message);
    }
}

}  // namespace detail

}  // namespace schizo
