#pragma once

#include <stdexcept>
#include <string>

namespace hm {

/// Malformed or inconsistent input (bad CSV line, unknown user, invalid flag).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that is well-formed but cannot support the requested computation,
/// e.g. a training set with a single class.
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hm
