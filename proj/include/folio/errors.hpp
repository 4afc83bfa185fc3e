#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folio {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid UTF-8 in an input; offset is the byte position of the first bad byte.
struct DecodeError : Error {
    DecodeError(std::string msg, std::size_t offset)
        : Error(std::move(msg)), offset(offset) {}
    std::size_t offset;
};

// A layout or face parameter outside its documented range.
struct ConfigError : Error {
    using Error::Error;
};

// Face derivation could not satisfy a rule; `clause` names the first one violated.
struct FaceError : Error {
    FaceError(std::string msg, std::string clause, double measured = 0.0)
        : Error(std::move(msg)), clause(std::move(clause)), measured(measured) {}
    std::string clause;
    double measured;
};

// Keystroke script rejected; position is 1-based into the script text.
struct ScriptError : Error {
    ScriptError(std::string msg, std::size_t position)
        : Error(std::move(msg)), position(position) {}
    std::size_t position;
};

// Theme or annotations file rejected; line is 1-based.
struct ParseFileError : Error {
    ParseFileError(std::string msg, int line)
        : Error(std::move(msg)), line(line) {}
    int line;
};

// Malformed escape sequence fed to strip_sgr; offset is the byte position.
struct StripError : Error {
    StripError(std::string msg, std::size_t offset)
        : Error(std::move(msg)), offset(offset) {}
    std::size_t offset;
};

struct RangeError : Error {
    using Error::Error;
};

}  // namespace folio
