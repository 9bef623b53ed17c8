#pragma once

// Shared error types and the internal invariant check used across the library.

#include <stdexcept>
#include <sstream>
#include <string>

namespace arknit {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual or JSON input. Carries a 1-based line/column position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int col)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_;
  int col_;
};

/// A violated precondition or internal invariant. These indicate either
/// misuse of an operation or a mathematical impossibility the caller asked
/// for; they are thrown (not aborted) so callers and tests can observe them.
class CheckError : public Error {
 public:
  explicit CheckError(const std::string& what) : Error(what) {}
};

namespace detail {
[[noreturn]] inline void check_failed(const char* expr, const char* file,
                                      int line, const std::string& msg) {
  std::ostringstream os;
  os << "check failed: " << expr;
  if (!msg.empty()) os << ": " << msg;
  os << " [" << file << ":" << line << "]";
  throw CheckError(os.str());
}
}  // namespace detail

}  // namespace arknit

// Active in all build modes; the exactness checks it guards are part of the
// library's contract, not debug aids.
#define ARKNIT_CHECK(cond, msg)                                         \
  do {                                                                  \
    if (!(cond)) ::arknit::detail::check_failed(#cond, __FILE__, __LINE__, \
                                                (msg));                 \
  } while (0)
