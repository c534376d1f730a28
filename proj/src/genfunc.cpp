#include "diocount/genfunc.hpp"

#include <cmath>
#include <stdexcept>

#include "diocount/errors.hpp"

namespace diocount {

PowerSeries term_series(uint64_t c, uint32_t k, uint64_t order, SolutionDomain domain) {
  if (c < 1 || k < 1) throw std::invalid_argument("term_series: wants c >= 1, k >= 1");
  PowerSeries s(order);
  uint64_t x = domain == SolutionDomain::Positive ? 1 : 0;
  for (;; ++x) {
    BigInt m = c * pow_big(x, k);
    if (m > order) break;
    s.coefficients[m.get_ui()] = 1;
  }
  return s;
}

PowerSeries series_product(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series_product: order mismatch (" +
                                std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()) + ")");
  const uint64_t order = a.order();
  PowerSeries out(order);
  for (uint64_t i = 0; i <= order; ++i) {
    if (a.coefficients[i] == 0) continue;  // term series are mostly zeros
    for (uint64_t m = i; m <= order; ++m)
      if (b.coefficients[m - i] != 0)
        out.coefficients[m] += a.coefficients[i] * b.coefficients[m - i];
  }
  return out;
}

const BigInt& coefficient(const PowerSeries& series, uint64_t n) {
  if (n > series.order())
    throw std::out_of_range("coefficient: index " + std::to_string(n) +
                            " beyond truncation order " + std::to_string(series.order()));
  return series.coefficients[n];
}

BigInt residue_count(const Equation& eq, const Budgets& budgets) {
  require_valid_equation(eq);
  // Same two-array footprint as the DP path, so the same guard applies.
  double bits = static_cast<double>(eq.var_count()) *
                std::log2(static_cast<double>(eq.rhs) + 2.0);
  uint64_t limbs = static_cast<uint64_t>(bits / 64.0) + 1;
  uint64_t estimate = 2 * (eq.rhs + 1) * (sizeof(BigInt) + 8 * limbs);
  if (estimate > budgets.max_memory_bytes)
    throw BudgetError("memory", budgets.max_memory_bytes, estimate);

  PowerSeries product = term_series(eq.terms[0].coefficient, eq.terms[0].exponent,
                                    eq.rhs, eq.domain);
  for (std::size_t i = 1; i < eq.terms.size(); ++i)
    product = series_product(
        product, term_series(eq.terms[i].coefficient, eq.terms[i].exponent, eq.rhs,
                             eq.domain));
  return coefficient(product, eq.rhs);
}

nlohmann::json series_to_json(const PowerSeries& series) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : series.coefficients) arr.push_back(c.get_str());
  return arr;
}

}  // namespace diocount
