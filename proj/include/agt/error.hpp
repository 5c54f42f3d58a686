#ifndef AGT_ERROR_HPP_
#define AGT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace agt {

  enum class ErrorCode {
    syntax,
    incomplete,
    duplicate_transition,
    unknown_identifier,
    invalid_argument,
    not_invertible,
    not_reversible,
    alphabet_mismatch,
    budget_exceeded,
    no_sink,
    verification_failed,
    not_associative,
    no_identity,
    no_inverse
  };

  std::string_view to_string(ErrorCode code) noexcept;

  //! Every failure raised by the library is an Error carrying a code.
  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& message)
        : std::runtime_error(message), _code(code) {}

    ErrorCode code() const noexcept {
      return _code;
    }

   private:
    ErrorCode _code;
  };

  //! Syntax errors in machine, group or word text; line is 1-based, 0 if
  //! the text has no line structure.
  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::string const& message)
        : Error(ErrorCode::syntax,
                line == 0 ? message
                          : "line " + std::to_string(line) + ": " + message),
          _line(line) {}

    std::size_t line() const noexcept {
      return _line;
    }

   private:
    std::size_t _line;
  };

}  // namespace agt

#endif  // AGT_ERROR_HPP_
