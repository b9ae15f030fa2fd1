#pragma once

#include <stdexcept>

namespace mmlab {

// Precondition failures use std::domain_error. This one is for requests that
// are well-formed but exceed what an exact routine supports (e.g. support too
// large for backtracking).
class capability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mmlab
