#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diocount/bigint.hpp"
#include "diocount/budgets.hpp"
#include "diocount/equation.hpp"

namespace diocount {

// Exact solution counts; arbitrary precision throughout.
using CountValue = BigInt;

enum class CountMethod { Brute, Dp, Fourier };

const char* method_name(CountMethod m);
std::optional<CountMethod> parse_method(const std::string& word);

// Direct enumeration over per-variable admissible values, pruning branches
// whose partial sum already exceeds the right-hand side. The ground-truth
// oracle everything else is checked against. Refuses via BudgetError once
// the visited-node count passes budgets.max_nodes.
CountValue count_brute_force(const Equation& eq, const Budgets& budgets = {});

// Coefficient of t^rhs in the product over terms of (sum over admissible x
// of t^{c*x^k}), built by iterated convolution over an array of rhs+1
// coefficients. Always equals count_brute_force. Refuses via BudgetError
// when the coefficient array estimate passes budgets.max_memory_bytes.
CountValue count_dp(const Equation& eq, const Budgets& budgets = {});

// Stars and bars for x_1+...+x_s = n with unit coefficients:
// C(n-1, s-1) over positive solutions (0 when n < s), C(n+s-1, s-1) over
// non-negative ones.
CountValue count_linear_closed_form(uint64_t s, uint64_t n, SolutionDomain domain);

// Number of multisets {x_1 <= ... <= x_s}, x_i >= 1, with sum of x_i^k = n.
// Ordered-tail recursion (each next part at least the previous one), node
// budget as in count_brute_force.
CountValue count_representations(uint64_t n, uint64_t s, uint64_t k,
                                 const Budgets& budgets = {});

// The permutation rule relating representation counts to ordered counts:
// (s! - 1) * representations when s divides n, s! * representations
// otherwise. Implemented verbatim; it disagrees with ordered-tuple counting
// whenever a representation repeats a part (see the known-divergence test).
CountValue permutation_rule_count(const CountValue& representations, uint64_t s,
                                  uint64_t n);

// One sweep row: the count for a single right-hand side.
struct SweepRecord {
  uint64_t n = 0;
  CountValue count;
  std::string method;
  double seconds = 0.0;
};

// A right-hand side the sweep could not afford; the sweep itself continues.
struct SweepFailure {
  uint64_t n = 0;
  std::string reason;
};

struct SweepTable {
  EquationTemplate tmpl;
  std::string method;  // requested methods joined with '+'
  std::vector<SweepRecord> records;   // sorted by n ascending, n distinct
  std::vector<SweepFailure> failures;
};

struct SweepOptions {
  std::vector<CountMethod> methods = {CountMethod::Dp};
  Budgets budgets;
  unsigned parallel = 1;
};

// One record per n; when more than one method is requested every method runs
// and the counts are cross-checked (CrossCheckError on disagreement).
// Per-record budget refusals land in failures rather than aborting.
// n_values must be non-empty and strictly increasing.
SweepTable count_sweep(const EquationTemplate& tmpl,
                       const std::vector<uint64_t>& n_values,
                       const SweepOptions& opts = {});

// CSV columns: n,count,method,seconds. Counts print as decimal strings.
std::string sweep_to_csv(const SweepTable& table);

void to_json(nlohmann::json& j, const SweepTable& table);
SweepTable sweep_from_json(const nlohmann::json& j);

}  // namespace diocount
