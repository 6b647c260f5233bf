#pragma once

#include <stdexcept>
#include <string>

namespace cavcp {

// Evaluation point sits (numerically) on a pole of a reflection coefficient
// or a reduced Bessel function.
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A quadrature, series or continued fraction failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested value exceeds the representable range; callers should switch to
// the reduced/scaled evaluation path.
struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cavcp
