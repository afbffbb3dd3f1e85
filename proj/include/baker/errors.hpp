#pragma once
#include <stdexcept>
#include <string>

namespace baker {

// malformed input text (field specs, polynomials, override files)
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// structurally valid input that violates an operation's contract
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a configurable resource bound was exceeded (level size, iteration cap)
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace baker
