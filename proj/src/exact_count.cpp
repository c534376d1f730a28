#include "diocount/exact_count.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "diocount/errors.hpp"
#include "diocount/expsum.hpp"

namespace diocount {

const char* method_name(CountMethod m) {
  switch (m) {
    case CountMethod::Brute: return "brute";
    case CountMethod::Dp: return "dp";
    default: return "fourier";
  }
}

std::optional<CountMethod> parse_method(const std::string& word) {
  if (word == "brute") return CountMethod::Brute;
  if (word == "dp") return CountMethod::Dp;
  if (word == "fourier") return CountMethod::Fourier;
  return std::nullopt;
}

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Contributions c*x^k <= rhs for x in the domain's range, ascending.
std::vector<uint64_t> term_values(const Term& t, uint64_t rhs, SolutionDomain domain) {
  std::vector<uint64_t> values;
  uint64_t x = domain == SolutionDomain::Positive ? 1 : 0;
  for (;; ++x) {
    BigInt v = t.coefficient * pow_big(x, t.exponent);
    if (v > rhs) break;
    values.push_back(v.get_ui());
  }
  return values;
}

struct BruteState {
  const std::vector<std::vector<uint64_t>>* lists;
  uint64_t nodes = 0;
  uint64_t max_nodes = 0;
};

BigInt brute_recurse(BruteState& st, std::size_t i, uint64_t remaining) {
  const auto& lists = *st.lists;
  if (i == lists.size()) return remaining == 0 ? 1 : 0;
  BigInt total = 0;
  for (uint64_t v : lists[i]) {
    if (v > remaining) break;  // ascending values: the rest only grow
    if (++st.nodes > st.max_nodes)
      throw BudgetError("nodes", st.max_nodes, st.nodes);
    total += brute_recurse(st, i + 1, remaining - v);
  }
  return total;
}

// Estimated bytes for the two big-integer coefficient arrays of a DP pass.
uint64_t dp_memory_estimate(const Equation& eq) {
  double bits = static_cast<double>(eq.var_count()) *
                std::log2(static_cast<double>(eq.rhs) + 2.0);
  uint64_t limbs = static_cast<uint64_t>(bits / 64.0) + 1;
  return 2 * (eq.rhs + 1) * (sizeof(BigInt) + 8 * limbs);
}

// One convolution pass: out[m] = sum over admissible x of in[m - c*x^k].
// k = 1 terms use the running recurrence (values form the progression
// c, 2c, ...), higher k convolve the sparse value list directly.
void convolve_term(const std::vector<BigInt>& in, std::vector<BigInt>& out,
                   const Term& t, SolutionDomain domain) {
  const uint64_t n = in.size() - 1;
  std::fill(out.begin(), out.end(), 0);
  if (t.exponent == 1) {
    const uint64_t c = t.coefficient;
    for (uint64_t m = 0; m <= n; ++m) {
      // out[m] = out[m-c] + in[m-c]  (positive: x >= 1)
      // out[m] = out[m-c] + in[m]    (non-negative: x >= 0)
      if (domain == SolutionDomain::NonNegative) out[m] = in[m];
      if (m >= c) {
        out[m] += out[m - c];
        if (domain == SolutionDomain::Positive) out[m] += in[m - c];
      }
    }
    return;
  }
  uint64_t x = domain == SolutionDomain::Positive ? 1 : 0;
  for (;; ++x) {
    BigInt vb = t.coefficient * pow_big(x, t.exponent);
    if (vb > n) break;
    uint64_t v = vb.get_ui();
    for (uint64_t m = v; m <= n; ++m)
      if (in[m - v] != 0) out[m] += in[m - v];
  }
}

// Spine shared by count_dp and count_sweep: the full coefficient array of
// the product series truncated at n_max. Slot m is the count for rhs = m.
std::vector<BigInt> dp_coefficients(const std::vector<Term>& terms,
                                    SolutionDomain domain, uint64_t n_max,
                                    const Budgets& budgets) {
  Equation probe{terms, n_max, domain};
  require_valid_equation(probe);
  uint64_t estimate = dp_memory_estimate(probe);
  if (estimate > budgets.max_memory_bytes)
    throw BudgetError("memory", budgets.max_memory_bytes, estimate);

  // Largest contribution span first: no correctness effect, keeps the
  // sparse passes touching long zero runs early (cheaper adds).
  std::vector<Term> order = terms;
  std::stable_sort(order.begin(), order.end(), [n_max](const Term& a, const Term& b) {
    uint64_t xa = nth_root_index(a.coefficient ? n_max / a.coefficient : 0, a.exponent);
    uint64_t xb = nth_root_index(b.coefficient ? n_max / b.coefficient : 0, b.exponent);
    BigInt sa = a.coefficient * pow_big(xa, a.exponent);
    BigInt sb = b.coefficient * pow_big(xb, b.exponent);
    return sa > sb;
  });

  std::vector<BigInt> cur(n_max + 1), next(n_max + 1);
  cur[0] = 1;
  for (const Term& t : order) {
    convolve_term(cur, next, t, domain);
    cur.swap(next);
  }
  return cur;
}

}  // namespace

CountValue count_brute_force(const Equation& eq, const Budgets& budgets) {
  require_valid_equation(eq);
  std::vector<std::vector<uint64_t>> lists;
  lists.reserve(eq.terms.size());
  for (const auto& t : eq.terms) lists.push_back(term_values(t, eq.rhs, eq.domain));
  BruteState st{&lists, 0, budgets.max_nodes};
  return brute_recurse(st, 0, eq.rhs);
}

CountValue count_dp(const Equation& eq, const Budgets& budgets) {
  require_valid_equation(eq);
  return dp_coefficients(eq.terms, eq.domain, eq.rhs, budgets)[eq.rhs];
}

CountValue count_linear_closed_form(uint64_t s, uint64_t n, SolutionDomain domain) {
  if (s < 1) throw std::invalid_argument("count_linear_closed_form: s must be >= 1");
  if (domain == SolutionDomain::Positive) {
    if (n < s) return 0;
    return binomial(n - 1, s - 1);
  }
  return binomial(n + s - 1, s - 1);
}

namespace {

struct RepState {
  uint64_t k;
  uint64_t nodes = 0;
  uint64_t max_nodes = 0;
};

BigInt representations_recurse(RepState& st, uint64_t remaining, uint64_t vars,
                               uint64_t x_min) {
  if (vars == 0) return remaining == 0 ? 1 : 0;
  BigInt total = 0;
  for (uint64_t x = x_min;; ++x) {
    BigInt floor_cost = BigInt(vars) * pow_big(x, st.k);
    if (floor_cost > remaining) break;  // even all-equal tails overshoot
    if (++st.nodes > st.max_nodes)
      throw BudgetError("nodes", st.max_nodes, st.nodes);
    BigInt head = pow_big(x, st.k);
    total += representations_recurse(st, remaining - head.get_ui(), vars - 1, x);
  }
  return total;
}

}  // namespace

CountValue count_representations(uint64_t n, uint64_t s, uint64_t k,
                                 const Budgets& budgets) {
  if (s < 1 || k < 1 || n < 1)
    throw std::invalid_argument("count_representations: wants n >= 1, s >= 1, k >= 1");
  RepState st{k, 0, budgets.max_nodes};
  return representations_recurse(st, n, s, 1);
}

CountValue permutation_rule_count(const CountValue& representations, uint64_t s,
                                  uint64_t n) {
  if (s < 1) throw std::invalid_argument("permutation_rule_count: s must be >= 1");
  BigInt fact = factorial(static_cast<unsigned long>(s));
  if (s != 0 && n % s == 0) return (fact - 1) * representations;
  return fact * representations;
}

namespace {

std::string joined_methods(const std::vector<CountMethod>& methods) {
  std::string tag;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (i) tag += '+';
    tag += method_name(methods[i]);
  }
  return tag;
}

}  // namespace

SweepTable count_sweep(const EquationTemplate& tmpl,
                       const std::vector<uint64_t>& n_values,
                       const SweepOptions& opts) {
  if (n_values.empty()) throw std::invalid_argument("count_sweep: empty n_values");
  for (std::size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1])
      throw std::invalid_argument("count_sweep: n_values must be strictly increasing");
  if (opts.methods.empty())
    throw std::invalid_argument("count_sweep: no methods requested");

  SweepTable table;
  table.tmpl = tmpl;
  table.method = joined_methods(opts.methods);

  const bool wants_dp =
      std::find(opts.methods.begin(), opts.methods.end(), CountMethod::Dp) !=
      opts.methods.end();

  // One DP build at the largest n serves every record: slot m of the
  // coefficient array is the count for rhs = m. Falls back to per-record
  // DP when the full array does not fit the memory budget (small records
  // may still be affordable individually).
  std::vector<BigInt> shared;
  double shared_share = 0.0;
  bool shared_ok = false;
  if (wants_dp) {
    double t0 = now_seconds();
    try {
      shared = dp_coefficients(tmpl.terms, tmpl.domain, n_values.back(), opts.budgets);
      shared_ok = true;
      shared_share = (now_seconds() - t0) / static_cast<double>(n_values.size());
    } catch (const BudgetError&) {
      shared_ok = false;
    }
  }

  struct Slot {
    bool ok = false;
    bool failed = false;
    SweepRecord record;
    SweepFailure failure;
  };
  std::vector<Slot> slots(n_values.size());
  std::mutex first_error_mutex;
  std::exception_ptr first_error;

  auto run_record = [&](std::size_t idx) {
    uint64_t n = n_values[idx];
    Slot& slot = slots[idx];
    double t0 = now_seconds();
    try {
      std::vector<std::pair<CountMethod, BigInt>> counts;
      for (CountMethod m : opts.methods) {
        Equation eq = tmpl.with_rhs(n);
        switch (m) {
          case CountMethod::Brute:
            counts.emplace_back(m, count_brute_force(eq, opts.budgets));
            break;
          case CountMethod::Dp:
            counts.emplace_back(m, shared_ok ? shared[n] : count_dp(eq, opts.budgets));
            break;
          case CountMethod::Fourier: {
            FourierOptions fopts;
            fopts.budgets = opts.budgets;
            counts.emplace_back(m, fourier_count(eq, fopts));
            break;
          }
        }
      }
      for (std::size_t i = 1; i < counts.size(); ++i)
        if (counts[i].second != counts[0].second)
          throw CrossCheckError("count mismatch at n=" + std::to_string(n) + ": " +
                                std::string(method_name(counts[0].first)) + "=" +
                                counts[0].second.get_str() + " vs " +
                                std::string(method_name(counts[i].first)) + "=" +
                                counts[i].second.get_str());
      slot.record = SweepRecord{n, counts[0].second, table.method,
                                now_seconds() - t0 + shared_share};
      slot.ok = true;
    } catch (const BudgetError& e) {
      slot.failure = SweepFailure{n, e.what()};
      slot.failed = true;
    } catch (...) {
      std::lock_guard<std::mutex> lock(first_error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  unsigned workers = std::max(1u, opts.parallel);
  if (workers == 1) {
    for (std::size_t i = 0; i < slots.size(); ++i) run_record(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> cursor{0};
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < slots.size();
             i = cursor.fetch_add(1))
          run_record(i);
      });
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (auto& slot : slots) {
    if (slot.ok) table.records.push_back(std::move(slot.record));
    else if (slot.failed) table.failures.push_back(std::move(slot.failure));
  }
  return table;
}

std::string sweep_to_csv(const SweepTable& table) {
  std::ostringstream os;
  os << "n,count,method,seconds\n";
  for (const auto& r : table.records) {
    char secs[32];
    std::snprintf(secs, sizeof(secs), "%.6f", r.seconds);
    os << r.n << ',' << r.count.get_str() << ',' << r.method << ',' << secs << '\n';
  }
  return os.str();
}

void to_json(nlohmann::json& j, const SweepTable& table) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : table.records)
    records.push_back({{"n", r.n},
                       {"count", r.count.get_str()},
                       {"method", r.method},
                       {"seconds", r.seconds}});
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : table.failures)
    failures.push_back({{"n", f.n}, {"reason", f.reason}});
  j = nlohmann::json{{"template", table.tmpl},
                     {"method", table.method},
                     {"records", records},
                     {"failures", failures}};
}

SweepTable sweep_from_json(const nlohmann::json& j) {
  SweepTable table;
  table.tmpl = j.at("template").get<EquationTemplate>();
  table.method = j.value("method", std::string("dp"));
  for (const auto& r : j.at("records")) {
    SweepRecord rec;
    rec.n = r.at("n").get<uint64_t>();
    rec.count = BigInt(r.at("count").get<std::string>());
    rec.method = r.value("method", table.method);
    rec.seconds = r.value("seconds", 0.0);
    table.records.push_back(std::move(rec));
  }
  if (j.contains("failures"))
    for (const auto& f : j.at("failures"))
      table.failures.push_back(
          SweepFailure{f.at("n").get<uint64_t>(), f.at("reason").get<std::string>()});
  return table;
}

}  // namespace diocount
