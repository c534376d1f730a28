#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diocount/bigint.hpp"
#include "diocount/budgets.hpp"
#include "diocount/equation.hpp"
#include "diocount/fit.hpp"

namespace diocount {

struct ComplexSample {
  double re = 0.0;
  double im = 0.0;
};

// Largest integer N with N^k <= n. Pure integer arithmetic, no floating pow.
uint64_t nth_root_index(uint64_t n, uint32_t k);

// The power-term exponential sum: sum over m = 1..N of e^{2*pi*i*x*c*m^k}.
// The phase x*c*m^k is reduced modulo 1 in exact integer arithmetic before
// any transcendental call: c*m^k is an exact integer, x enters through its
// binary mantissa, so the reduced phase is correct to machine epsilon
// regardless of how large c*m^k grows.
ComplexSample weyl_sum(double x, uint64_t N, uint32_t k, uint64_t c = 1);

// Same sum at the rational point x = r/M: phase = ((r * (c*m^k mod M)) mod M)/M,
// exact by construction. This is the only evaluation fourier_count uses.
ComplexSample weyl_sum_at_fraction(uint64_t r, uint64_t M, uint64_t N, uint32_t k,
                                   uint64_t c = 1);

struct FourierOptions {
  Budgets budgets;
  // 0 = the exactness-guaranteeing sample count; anything else is an
  // experiment knob (too few samples aliases the spectrum and the cross-check
  // against other counters will catch it).
  uint64_t samples_override = 0;
  unsigned parallel = 1;
};

// Counts solutions as the discrete Fourier coefficient: the product of the
// per-term sums is a trigonometric polynomial of degree D = sum c_i*N_i^{k_i},
// so averaging over M = max(D, rhs)+1 equidistant sample points recovers the
// rhs-th coefficient exactly up to floating rounding. The real part must land
// within 1e-6*M of an integer and the imaginary part within 1e-6*M of zero,
// else CrossCheckError; the rounded integer equals count_dp. NonNegative
// domains add the x=0 unit term to each factor. BudgetError when M * sum N_i
// passes budgets.max_samples.
BigInt fourier_count(const Equation& eq, const FourierOptions& opts = {});

// The 2^j-th absolute-moment of the k-th-power sum over 1..N equals, by
// orthogonality, the number of solutions of
//   x_1^k + ... + x_h^k = y_1^k + ... + y_h^k,  h = 2^{j-1}, all in 1..N.
// Computed by value-histogram convolution: O(h*N*V) with V = h*N^k, then
// sum of squared multiplicities. Budget guards on both V (memory) and
// h*N*V (work).
BigInt hua_moment_combinatorial(uint64_t N, uint32_t k, uint32_t j,
                                const Budgets& budgets = {});

// The same moment by exact quadrature: (1/M) * sum over r of |f(r/M)|^{2^j}
// with M = 2^j * N^k + 1, which integrates the trigonometric polynomial
// |f|^{2^j} exactly up to rounding. Lands within 1e-6*M of the combinatorial
// value.
double hua_moment_quadrature(uint64_t N, uint32_t k, uint32_t j,
                             const Budgets& budgets = {});

struct MomentRecord {
  uint64_t N = 0;
  uint32_t k = 1;
  uint32_t j = 1;
  BigInt combinatorial;
  double quadrature = 0.0;
  uint64_t samples = 0;
};

MomentRecord hua_moment_record(uint64_t N, uint32_t k, uint32_t j,
                               const Budgets& budgets = {});

// CSV columns: N,k,j,combinatorial,quadrature,samples.
std::string moments_to_csv(const std::vector<MomentRecord>& records);

// Least-squares slope of log(combinatorial moment) against log(N).
// Requires 1 <= j <= k (the moment lemma's range) and >= 4 increasing N.
// For j = 1 the moment is N itself and the slope is exactly 1.0.
SlopeFit hua_slope_fit(uint32_t k, uint32_t j, const std::vector<uint64_t>& N_values,
                       const Budgets& budgets = {});

}  // namespace diocount
