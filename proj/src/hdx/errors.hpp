#ifndef HDX_ERRORS_HPP
#define HDX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hdx {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid ids, malformed structures, violated preconditions.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Schema violations in JSON documents; `where` is a path such as
// "edges[3].hinges".
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// States the library should never reach on valid input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdx

#endif  // HDX_ERRORS_HPP
