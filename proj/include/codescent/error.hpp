#ifndef CODESCENT_ERROR_HPP
#define CODESCENT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace codescent {

// Base of everything the library throws on bad input or refused work.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Violated precondition or malformed model data.
class InputError : public Error {
  public:
    using Error::Error;
};

// A configured size limit (matrix dimension, enumeration size) was exceeded.
class CapExceeded : public Error {
  public:
    using Error::Error;
};

// Two distinct integer triples explain the sequence equally well.
class AmbiguousFit : public Error {
  public:
    using Error::Error;
};

// Scenario text could not be parsed. Line and column are 1-based; 0 means
// the location is unknown (semantic errors on whole sections).
class ParseError : public InputError {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : InputError(format(line, column, what)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    static std::string format(std::size_t line, std::size_t column, const std::string& what) {
        if (line == 0) return what;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

}  // namespace codescent

#endif  // CODESCENT_ERROR_HPP
