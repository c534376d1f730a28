#include "diocount/expsum.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "diocount/errors.hpp"

namespace diocount {

uint64_t nth_root_index(uint64_t n, uint32_t k) {
  if (k < 1) throw std::invalid_argument("nth_root_index: k must be >= 1");
  if (k == 1 || n < 2) return n;
  BigInt root;
  BigInt nz(static_cast<unsigned long>(n));
  mpz_root(root.get_mpz_t(), nz.get_mpz_t(), k);
  uint64_t r = root.get_ui();
  // mpz_root already truncates; this pins the contract N^k <= n < (N+1)^k.
  while (pow_big(r + 1, k) <= nz) ++r;
  while (r > 0 && pow_big(r, k) > nz) --r;
  return r;
}

namespace {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Fractional part of x*t for exact integer t, without ever forming x*t in
// floating point: x = mant * 2^(e-53) exactly, so frac(x*t) =
// ((mant*t) mod 2^(53-e)) / 2^(53-e), an exact integer computation followed
// by one rounding.
double exact_frac_times(double x, const BigInt& t, const BigInt& mant, long sh) {
  if (x == 0.0 || sh <= 0) return 0.0;
  BigInt num = mant * t;
  mpz_fdiv_r_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(sh));
  return std::ldexp(num.get_d(), -static_cast<int>(sh));
}

}  // namespace

ComplexSample weyl_sum(double x, uint64_t N, uint32_t k, uint64_t c) {
  if (!std::isfinite(x)) throw std::invalid_argument("weyl_sum: x must be finite");
  if (k < 1) throw std::invalid_argument("weyl_sum: k must be >= 1");
  int e2 = 0;
  double f = std::frexp(x, &e2);
  BigInt mant(static_cast<long>(std::ldexp(f, 53)));
  long sh = 53 - e2;
  double re = 0.0, im = 0.0;
  for (uint64_t m = 1; m <= N; ++m) {
    BigInt t = c * pow_big(m, k);
    double phase = exact_frac_times(x, t, mant, sh);
    re += std::cos(kTwoPi * phase);
    im += std::sin(kTwoPi * phase);
  }
  return {re, im};
}

ComplexSample weyl_sum_at_fraction(uint64_t r, uint64_t M, uint64_t N, uint32_t k,
                                   uint64_t c) {
  if (M < 1) throw std::invalid_argument("weyl_sum_at_fraction: M must be >= 1");
  if (k < 1) throw std::invalid_argument("weyl_sum_at_fraction: k must be >= 1");
  double re = 0.0, im = 0.0;
  for (uint64_t m = 1; m <= N; ++m) {
    BigInt t = c * pow_big(m, k);
    uint64_t tm = mpz_fdiv_ui(t.get_mpz_t(), M);
    uint64_t q = mulmod_u64(r % M, tm, M);
    double phase = kTwoPi * (static_cast<double>(q) / static_cast<double>(M));
    re += std::cos(phase);
    im += std::sin(phase);
  }
  return {re, im};
}

BigInt fourier_count(const Equation& eq, const FourierOptions& opts) {
  require_valid_equation(eq);
  const uint64_t n = eq.rhs;
  const bool add_unit = eq.domain == SolutionDomain::NonNegative;

  std::vector<uint64_t> roots;
  BigInt degree = 0;
  uint64_t total_terms = 0;
  for (const auto& t : eq.terms) {
    uint64_t Ni = nth_root_index(n, t.exponent);
    roots.push_back(Ni);
    degree += t.coefficient * pow_big(Ni, t.exponent);
    total_terms += Ni;
  }

  // The factor product is a trigonometric polynomial of degree `degree`;
  // sampling at max(degree, n)+1 points leaves no alias at index n.
  BigInt Mb = (degree > n ? degree : BigInt(n)) + 1;
  if (opts.samples_override != 0) Mb = opts.samples_override;

  BigInt cost = Mb * total_terms;
  if (cost > opts.budgets.max_samples || Mb > (BigInt(1) << 62))
    throw BudgetError("samples", opts.budgets.max_samples,
                      cost.fits_ulong_p() ? cost.get_ui() : UINT64_MAX);
  const uint64_t M = Mb.get_ui();

  // Per-term residue tables: (c * m^k) mod M for m = 1..N_i.
  std::vector<std::vector<uint64_t>> tables;
  for (std::size_t i = 0; i < eq.terms.size(); ++i) {
    std::vector<uint64_t> res;
    res.reserve(roots[i]);
    for (uint64_t m = 1; m <= roots[i]; ++m) {
      BigInt t = eq.terms[i].coefficient * pow_big(m, eq.terms[i].exponent);
      res.push_back(mpz_fdiv_ui(t.get_mpz_t(), M));
    }
    tables.push_back(std::move(res));
  }
  const uint64_t n_res = n % M;

  auto eval_range = [&](uint64_t r0, uint64_t r1, double& out_re, double& out_im) {
    double acc_re = 0.0, acc_im = 0.0;
    for (uint64_t r = r0; r < r1; ++r) {
      double prod_re = 1.0, prod_im = 0.0;
      for (const auto& res : tables) {
        double s_re = add_unit ? 1.0 : 0.0, s_im = 0.0;
        for (uint64_t rm : res) {
          uint64_t q = mulmod_u64(r, rm, M);
          double phase = kTwoPi * (static_cast<double>(q) / static_cast<double>(M));
          s_re += std::cos(phase);
          s_im += std::sin(phase);
        }
        double next_re = prod_re * s_re - prod_im * s_im;
        double next_im = prod_re * s_im + prod_im * s_re;
        prod_re = next_re;
        prod_im = next_im;
      }
      uint64_t qn = mulmod_u64(r, n_res, M);
      double phase = -kTwoPi * (static_cast<double>(qn) / static_cast<double>(M));
      double c_re = std::cos(phase), c_im = std::sin(phase);
      acc_re += prod_re * c_re - prod_im * c_im;
      acc_im += prod_re * c_im + prod_im * c_re;
    }
    out_re = acc_re;
    out_im = acc_im;
  };

  // Contiguous chunks combined in fixed order: deterministic for a given
  // parallelism degree.
  unsigned workers = std::max(1u, opts.parallel);
  if (static_cast<uint64_t>(workers) > M) workers = static_cast<unsigned>(M);
  double sum_re = 0.0, sum_im = 0.0;
  if (workers == 1) {
    eval_range(0, M, sum_re, sum_im);
  } else {
    std::vector<double> part_re(workers, 0.0), part_im(workers, 0.0);
    std::vector<std::thread> pool;
    uint64_t chunk = (M + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      uint64_t r0 = std::min<uint64_t>(M, static_cast<uint64_t>(w) * chunk);
      uint64_t r1 = std::min<uint64_t>(M, r0 + chunk);
      pool.emplace_back(eval_range, r0, r1, std::ref(part_re[w]), std::ref(part_im[w]));
    }
    for (auto& th : pool) th.join();
    for (unsigned w = 0; w < workers; ++w) {
      sum_re += part_re[w];
      sum_im += part_im[w];
    }
  }

  const double real = sum_re / static_cast<double>(M);
  const double imag = sum_im / static_cast<double>(M);
  const double tol = 1e-6 * static_cast<double>(M);
  const double rounded = std::nearbyint(real);
  if (!(std::fabs(real - rounded) <= tol) || !(std::fabs(imag) <= tol)) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "fourier_count: sample average %.6f%+.6fi is not integral "
                  "within %.3g (M=%llu)",
                  real, imag, tol, static_cast<unsigned long long>(M));
    throw CrossCheckError(msg);
  }
  if (std::fabs(rounded) > 9.0e15)
    throw CrossCheckError("fourier_count: count exceeds the exact double range");
  long long value = std::llround(real);
  if (value < 0) value = 0;  // -0.0 and tiny negative noise round to zero
  return BigInt(static_cast<long>(value));
}

namespace {

void check_hua_args(uint64_t N, uint32_t k, uint32_t j) {
  if (N < 1 || k < 1 || j < 1)
    throw std::invalid_argument("hua moment: wants N >= 1, k >= 1, j >= 1");
  if (j > 62) throw std::invalid_argument("hua moment: j too large");
}

}  // namespace

BigInt hua_moment_combinatorial(uint64_t N, uint32_t k, uint32_t j,
                                const Budgets& budgets) {
  check_hua_args(N, k, j);
  const uint64_t h = 1ull << (j - 1);
  BigInt Vb = h * pow_big(N, k);

  BigInt work = Vb * h * N;
  if (work > budgets.max_nodes)
    throw BudgetError("nodes", budgets.max_nodes,
                      work.fits_ulong_p() ? work.get_ui() : UINT64_MAX);

  // Counts stay in machine words when even the final moment N^{2h} fits.
  const double bits = 2.0 * static_cast<double>(h) *
                      std::log2(static_cast<double>(N) + 1e-9);
  const bool fast = N == 1 || bits <= 62.0;

  BigInt mem = (Vb + 1) * (fast ? 16 : 2 * (sizeof(BigInt) + 8 * (uint64_t(bits / 64) + 1)));
  if (mem > budgets.max_memory_bytes)
    throw BudgetError("memory", budgets.max_memory_bytes,
                      mem.fits_ulong_p() ? mem.get_ui() : UINT64_MAX);

  const uint64_t V = Vb.get_ui();
  std::vector<uint64_t> powers;
  powers.reserve(N);
  for (uint64_t m = 1; m <= N; ++m) powers.push_back(pow_big(m, k).get_ui());

  if (fast) {
    std::vector<uint64_t> cur(V + 1, 0), next(V + 1, 0);
    cur[0] = 1;
    for (uint64_t pass = 0; pass < h; ++pass) {
      std::fill(next.begin(), next.end(), 0);
      for (uint64_t v = 0; v <= V; ++v)
        if (cur[v])
          for (uint64_t p : powers) next[v + p] += cur[v];
      cur.swap(next);
    }
    uint64_t moment = 0;
    for (uint64_t v = 0; v <= V; ++v) moment += cur[v] * cur[v];
    return BigInt(static_cast<unsigned long>(moment));
  }

  std::vector<BigInt> cur(V + 1), next(V + 1);
  cur[0] = 1;
  for (uint64_t pass = 0; pass < h; ++pass) {
    for (auto& x : next) x = 0;
    for (uint64_t v = 0; v <= V; ++v)
      if (cur[v] != 0)
        for (uint64_t p : powers) next[v + p] += cur[v];
    cur.swap(next);
  }
  BigInt moment = 0;
  for (uint64_t v = 0; v <= V; ++v)
    if (cur[v] != 0) moment += cur[v] * cur[v];
  return moment;
}

double hua_moment_quadrature(uint64_t N, uint32_t k, uint32_t j,
                             const Budgets& budgets) {
  check_hua_args(N, k, j);
  BigInt Mb = (BigInt(1) << j) * pow_big(N, k) + 1;
  BigInt cost = Mb * N;
  if (cost > budgets.max_samples)
    throw BudgetError("samples", budgets.max_samples,
                      cost.fits_ulong_p() ? cost.get_ui() : UINT64_MAX);
  const uint64_t M = Mb.get_ui();

  std::vector<uint64_t> res;
  res.reserve(N);
  for (uint64_t m = 1; m <= N; ++m) res.push_back(pow_big(m, k).get_ui() % M);

  double acc = 0.0;
  for (uint64_t r = 0; r < M; ++r) {
    double s_re = 0.0, s_im = 0.0;
    for (uint64_t p : res) {
      uint64_t q = mulmod_u64(r, p, M);
      double phase = kTwoPi * (static_cast<double>(q) / static_cast<double>(M));
      s_re += std::cos(phase);
      s_im += std::sin(phase);
    }
    double a = s_re * s_re + s_im * s_im;  // |f|^2
    for (uint32_t t = 1; t < j; ++t) a = a * a;
    acc += a;
  }
  return acc / static_cast<double>(M);
}

MomentRecord hua_moment_record(uint64_t N, uint32_t k, uint32_t j,
                               const Budgets& budgets) {
  MomentRecord rec;
  rec.N = N;
  rec.k = k;
  rec.j = j;
  rec.combinatorial = hua_moment_combinatorial(N, k, j, budgets);
  rec.quadrature = hua_moment_quadrature(N, k, j, budgets);
  rec.samples = BigInt((BigInt(1) << j) * pow_big(N, k) + 1).get_ui();
  return rec;
}

std::string moments_to_csv(const std::vector<MomentRecord>& records) {
  std::ostringstream os;
  os << "N,k,j,combinatorial,quadrature,samples\n";
  for (const auto& r : records) {
    char quad[40];
    std::snprintf(quad, sizeof(quad), "%.10g", r.quadrature);
    os << r.N << ',' << r.k << ',' << r.j << ',' << r.combinatorial.get_str() << ','
       << quad << ',' << r.samples << '\n';
  }
  return os.str();
}

SlopeFit hua_slope_fit(uint32_t k, uint32_t j, const std::vector<uint64_t>& N_values,
                       const Budgets& budgets) {
  if (j < 1 || j > k)
    throw std::invalid_argument(
        "hua_slope_fit: the moment lemma's range is 1 <= j <= k");
  if (N_values.size() < 4)
    throw std::invalid_argument("hua_slope_fit: needs at least 4 values of N");
  for (std::size_t i = 1; i < N_values.size(); ++i)
    if (N_values[i] <= N_values[i - 1])
      throw std::invalid_argument("hua_slope_fit: N values must increase");

  std::vector<double> xs, ys;
  xs.reserve(N_values.size());
  ys.reserve(N_values.size());
  for (uint64_t N : N_values) {
    xs.push_back(std::log(static_cast<double>(N)));
    ys.push_back(log_big(hua_moment_combinatorial(N, k, j, budgets)));
  }
  return fit_linear(xs, ys);
}

}  // namespace diocount
