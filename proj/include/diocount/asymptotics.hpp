#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "diocount/bigint.hpp"
#include "diocount/exact_count.hpp"
#include "diocount/fit.hpp"

namespace diocount {

// Gamma function for x > 0, relative error <= 1e-12 on [0.1, 50]
// (Lanczos approximation, g = 7, nine terms, with reflection below 1/2).
// Throws std::domain_error on x <= 0.
double gamma_fn(double x);

// The Waring-type main-term coefficient in front of n^{s/k-1}, in both
// readings: `unpowered` = Gamma(1+1/k)/Gamma(s/k) and
// `powered` = Gamma(1+1/k)^s/Gamma(s/k) (the standard circle-method form).
struct MainTermCoefficient {
  double unpowered = 0.0;
  double powered = 0.0;
};

MainTermCoefficient main_term_coefficient(uint64_t s, uint32_t k);

// True iff the unpowered coefficient is < 1. Preconditions k > 1 and
// s > 2^k are enforced (std::invalid_argument), not silently ignored.
bool main_term_coeff_below_one(uint64_t s, uint32_t k);

// s = 2^{j_1} + ... + 2^{j_t} with j_1 > j_2 > ... > j_t >= 0.
struct BinaryDecomposition {
  std::vector<uint32_t> indices;
  friend bool operator==(const BinaryDecomposition&, const BinaryDecomposition&) = default;
};

BinaryDecomposition binary_decomposition(uint64_t s);

// The exponent saved over the trivial bound by chaining Cauchy-Schwarz with
// the moment lemma across the binary decomposition of s:
//   Delta(s) = sum_{i=1}^{t-1} (j_i+i)/2^i + (j_t+t-1)/2^{t-1},
// degenerating to j_1 when t = 1. Satisfies Delta(s) <= floor(log2 s) + 1.
Rational hua_deficit(uint64_t s);

// Variant with last term (j_t+t)/2^t instead; kept for side-by-side
// reporting. Disagrees with hua_deficit on every power of two above 2
// (e.g. 3/2 instead of 2 at s = 4) and whenever the trailing binary index
// is positive; the two coincide on s = 2, 3, 5 and the like.
Rational hua_deficit_alt(uint64_t s);

struct ValidityReport {
  bool ok = true;
  std::vector<std::string> notes;
};

// Which bound produced an exponent; the strings are wire-format tags fixed
// by the output contract.
enum class ExponentFormula { EqualPowers, Preliminary, MixedChain };
const char* formula_tag(ExponentFormula f);  // "eq33" | "eq42" | "eq45"

// An upper-bound exponent: count << n^{base_exponent + (epsilon terms)}.
// Epsilons are never numeric; the bound records how many of them it carries
// and empirical checks add a fixed slack instead.
struct ExponentBound {
  Rational base_exponent;
  uint64_t epsilon_slots = 0;
  ValidityReport validity;
  ExponentFormula formula = ExponentFormula::EqualPowers;
};

// Equal powers x_1^k + ... + x_s^k = n: base exponent (s - Delta(s))/k.
// Validity wants floor(log2 s) + 1 <= k, relaxed to floor(log2 s) <= k when
// s is a power of two (no Cauchy-Schwarz step is needed then). Out-of-range
// parameters yield validity.ok = false rather than an exception.
ExponentBound exponent_equal_powers(uint64_t s, uint32_t k);

// Mixed powers with exponents ks = (k_1 >= k_2 >= ... >= k_s), s >= 2:
// the Cauchy-Schwarz/moment chain peels factors from the smallest k up,
//   E = sum_{i=1}^{s-1} (2^i - i)/(2^i * k_{s-i+1})
//       + (2^{s-1} - s + 1)/(2^{s-1} * k_1).
// Validity: k_{s-i+1} >= i for i = 1..s-1 and k_1 >= s-1. Unsorted input is
// rejected with std::invalid_argument.
ExponentBound exponent_mixed_powers(const std::vector<uint32_t>& ks);

// The one-line bound sum_i 1/k_i obtained from per-factor absolute values.
Rational preliminary_exponent(const std::vector<uint32_t>& ks);

struct ComparisonReport {
  std::vector<uint32_t> ks;
  Rational preliminary;   // wire tag eq42
  Rational chained;       // wire tag eq45
  Rational gap;           // preliminary - chained, strictly positive when valid
  ValidityReport validity;
};

// Both exponents and their exact difference; validity failures are reported
// in the result, not thrown.
ComparisonReport exponent_comparison(const std::vector<uint32_t>& ks);

// CSV columns: ks,eq42,eq45,gap (ks joined with ';', rationals as "5/12").
std::string comparisons_to_csv(const std::vector<ComparisonReport>& reports);

// {"formula":"eq45","exponent":{"num":5,"den":12},"epsilon_slots":2,
//  "validity":{"ok":true,"notes":[]}}
nlohmann::json exponent_to_json(const ExponentBound& bound);
nlohmann::json comparison_to_json(const ComparisonReport& report);

// n^{s-1} / ((s-1)! * product a_i) for the linear equation with coefficients
// as. Evaluated exactly as a rational and converted; falls back to
// exp/log arithmetic when the exact value overflows double range.
double linear_main_term(const std::vector<uint64_t>& as, uint64_t n);

// Least-squares slope of log(count) against log(n) over a sweep table.
// With summatory = true the cumulative sums of the records are fitted
// instead — pointwise counts of power equations are wildly irregular (often
// zero), the running sum is monotone and smooth; over a dense table the
// cumulative sum is the true summatory function. Records with non-positive
// values (after summation) are skipped; >= 4 usable points required.
SlopeFit empirical_slope(const SweepTable& table, bool summatory);

}  // namespace diocount
