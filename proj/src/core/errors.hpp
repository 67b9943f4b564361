#ifndef HEATSHAPE_ERRORS_HPP
#define HEATSHAPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heatshape {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument or precondition violation.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Evaluation outside a tabulated/working range.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

// Quadrature or linear-solve failure; carries diagnostics in the message.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Invalid geometry (non-star-shaped boundary, inverted elements, ...).
class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& msg) : Error(msg) {}
};

// Inconsistent solver/experiment configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace heatshape

#endif
