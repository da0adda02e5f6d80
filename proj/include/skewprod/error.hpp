#ifndef SKEWPROD_ERROR_HPP
#define SKEWPROD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skewprod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic or comparison between an exact and a floating value where the
/// operation requires both sides to live in the same backend.
class BackendMismatch : public Error {
 public:
  BackendMismatch() : Error("backend mismatch: exact and floating scalars") {}
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

/// Raised when a numeric procedure cannot produce a certified answer
/// (root finder non-convergence, degree cap exceeded, degenerate normalization).
class NumericError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace skewprod

#endif  // SKEWPROD_ERROR_HPP
