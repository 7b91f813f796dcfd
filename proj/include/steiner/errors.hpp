#pragma once

#include <stdexcept>
#include <string>

namespace steiner {

// Base class for everything thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (word grammar, translation products, STS files).
struct parse_error : error {
  parse_error(const std::string& msg, std::size_t pos)
      : error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

// An operation was called outside its stated domain.
struct precondition_error : error {
  using error::error;
};

// A configured size/depth cap was hit before the computation finished.
struct resource_limit_error : error {
  using error::error;
};

}  // namespace steiner
