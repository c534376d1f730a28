#pragma once

#include <cstdint>

namespace diocount {

// Resource ceilings for counters and quadratures. Defaults are sized for
// desk-scale runs; the CLI exposes them as --budget-* flags.
struct Budgets {
  uint64_t max_nodes = 1'000'000'000;      // search-tree nodes / histogram work
  uint64_t max_memory_bytes = 2ull << 30;  // coefficient-array estimate
  uint64_t max_samples = 1'000'000'000;    // transcendental evaluations
};

}  // namespace diocount
