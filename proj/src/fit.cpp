#include "diocount/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace diocount {

SlopeFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("fit_linear: xs and ys differ in length");
  if (xs.size() < 2) throw std::invalid_argument("fit_linear: needs at least 2 points");
  const std::size_t n = xs.size();

  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean_x += xs[i];
  for (std::size_t i = 0; i < n; ++i) mean_y += ys[i];
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (xs[i] - mean_x) * (ys[i] - mean_y);
    den += (xs[i] - mean_x) * (xs[i] - mean_x);
  }
  if (den == 0.0) throw std::invalid_argument("fit_linear: x values are constant");

  SlopeFit fit;
  fit.slope = num / den;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  fit.points = n;
  return fit;
}

}  // namespace diocount
