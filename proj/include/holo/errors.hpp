#pragma once

#include <stdexcept>
#include <string>

namespace holo {

// Bad input: malformed config, wrong shapes, non-anti-Hermitian matrices.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Point outside the chart, group element outside the log's injectivity radius.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Requested operation does not exist for this dimension or group.
struct UnsupportedError : std::logic_error {
  using std::logic_error::logic_error;
};

// A hypothesis of the checked identity fails (e.g. surface law with a curved A).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Report output could not be written.
struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace holo
