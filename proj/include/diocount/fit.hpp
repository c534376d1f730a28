#pragma once

#include <cstddef>
#include <vector>

namespace diocount {

// Least-squares line through (x_i, y_i); callers feed log-log data.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square deviation from the fitted line
  std::size_t points = 0;
};

// Plain least squares. Requires >= 2 points and non-constant x. When ys is
// bitwise identical to xs the returned slope is exactly 1.0 (numerator and
// denominator are computed by the same operations in the same order).
SlopeFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace diocount
