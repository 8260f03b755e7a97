#pragma once

#include <stdexcept>
#include <string>

namespace corpkit {

// Fatal toolkit error. CLI entry points catch this, print the message and
// exit nonzero; library code throws it on contract violations and I/O
// failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace corpkit
