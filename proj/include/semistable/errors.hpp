#pragma once

#include <stdexcept>
#include <string>

namespace semistable {

/// Raised when an algebraic routine is handed an input it cannot process:
/// an identically-zero form, a vanishing extraneous Macaulay minor after all
/// retries, a degenerate specialization, and the like.
class DegenerateInputError : public std::domain_error {
public:
  explicit DegenerateInputError(const std::string &what)
      : std::domain_error(what) {}
};

/// Malformed configuration or polynomial literal.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string &what)
      : std::invalid_argument(what) {}
};

} // namespace semistable
