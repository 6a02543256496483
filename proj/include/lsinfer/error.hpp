#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsinfer {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownGlyph : public Error {
public:
    UnknownGlyph(std::size_t position, char glyph);

    std::size_t position() const noexcept { return position_; }
    char glyph() const noexcept { return glyph_; }

private:
    std::size_t position_;
    char glyph_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Derivation produced a word longer than the configured cap.
class WordLengthLimitExceeded : public Error {
public:
    using Error::Error;
};

// No D0L-system is compatible with the observations and the current bounds.
class Infeasible : public Error {
public:
    using Error::Error;
};

// A fragment scan ran off the end of the next word.
class InputExhausted : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class UnboundedSchema : public Error {
public:
    using Error::Error;
};

class SubwordViolation : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class Unsatisfiable : public Error {
public:
    using Error::Error;
};

}  // namespace lsinfer
