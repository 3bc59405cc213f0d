#pragma once

#include <stdexcept>
#include <string>

namespace hcross {

// Parameter or precondition violation detected at an API boundary.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested set or grid exceeds the configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An integer count does not fit the 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Grid resolution too coarse for the spectral support being synthesized.
class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least-squares design matrix is rank deficient on the fit window.
class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hcross
