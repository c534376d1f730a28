#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "diocount/bigint.hpp"
#include "diocount/budgets.hpp"
#include "diocount/equation.hpp"

namespace diocount {

// Truncated integer power series; coefficients index 0..order inclusive.
struct PowerSeries {
  std::vector<BigInt> coefficients;

  PowerSeries() : coefficients(1) {}
  explicit PowerSeries(uint64_t order) : coefficients(order + 1) {}

  uint64_t order() const { return coefficients.size() - 1; }
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

// Series of one c*x^k term: coefficient at m is 1 iff m = c*x^k for some x
// in the domain's range (x >= 1, or x >= 0 which adds the constant 1).
PowerSeries term_series(uint64_t c, uint32_t k, uint64_t order, SolutionDomain domain);

// Cauchy product truncated at the common order; exact integer arithmetic.
// Throws std::invalid_argument on an order mismatch.
PowerSeries series_product(const PowerSeries& a, const PowerSeries& b);

// The n-th Taylor coefficient — operationally what extracting the residue of
// series(z)/z^{n+1} at 0 means. Throws std::out_of_range past the truncation.
const BigInt& coefficient(const PowerSeries& series, uint64_t n);

// Composition: term series to order rhs, product, coefficient at rhs.
// Equals count_dp exactly. Memory guard as count_dp.
BigInt residue_count(const Equation& eq, const Budgets& budgets = {});

// Debug/docs dump: JSON array of decimal-string coefficients.
nlohmann::json series_to_json(const PowerSeries& series);

}  // namespace diocount
