#pragma once

#include <stdexcept>
#include <string>

namespace lci {

/// Malformed or out-of-contract input (bad letters, index ranges, size caps).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A formula was evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sample or lattice file does not follow its schema.
class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lci
