#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ovkit {

/// Malformed input or violated precondition. CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (dense sketch width, monomial count, ...) was hit. CLI exit code 3.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Merlin's proof space exceeded its cap; raise eps or lower k.
class ProofSpaceOverflow : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

/// A polynomial that should certify did not. CLI exit code 4.
class CertificationError : public std::logic_error {
 public:
  CertificationError(const std::string& what, std::size_t violating_t)
      : std::logic_error(what), violating_t_(violating_t) {}

  std::size_t violating_t() const noexcept { return violating_t_; }

 private:
  std::size_t violating_t_;
};

}  // namespace ovkit
