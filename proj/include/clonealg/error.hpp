#pragma once

#include <stdexcept>
#include <string>

namespace clonealg {

  // Base of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class ArityError : public Error {
   public:
    using Error::Error;
  };

  class UniverseError : public Error {
   public:
    using Error::Error;
  };

  // A requested arity, index or section exceeds the configured cap.
  class CapError : public Error {
   public:
    using Error::Error;
  };

  // Malformed input text; `line` is 1-based, 0 when unknown.
  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          _line(line) {}

    std::size_t line() const noexcept {
      return _line;
    }

   private:
    std::size_t _line;
  };

  // A precondition stated on a construction does not hold (e.g. a
  // non-central element handed to factor_congruences).
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

}  // namespace clonealg
