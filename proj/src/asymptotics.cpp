#include "diocount/asymptotics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace diocount {

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: wants x > 0");
  if (x < 0.5)  // reflection keeps the approximation on its good half-line
    return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
  // Lanczos approximation, g = 7, nine coefficients.
  static const double coef[9] = {0.99999999999980993,
                                 676.5203681218851,
                                 -1259.1392167224028,
                                 771.32342877765313,
                                 -176.61502916214059,
                                 12.507343278686905,
                                 -0.13857109526572012,
                                 9.9843695780195716e-6,
                                 1.5056327351493116e-7};
  const double z = x - 1.0;
  double a = coef[0];
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

MainTermCoefficient main_term_coefficient(uint64_t s, uint32_t k) {
  if (s < 1 || k < 1)
    throw std::invalid_argument("main_term_coefficient: wants s >= 1, k >= 1");
  const double g1 = gamma_fn(1.0 + 1.0 / k);
  const double gs = gamma_fn(static_cast<double>(s) / k);
  MainTermCoefficient out;
  out.unpowered = g1 / gs;
  out.powered = std::pow(g1, static_cast<double>(s)) / gs;
  return out;
}

bool main_term_coeff_below_one(uint64_t s, uint32_t k) {
  if (k <= 1)
    throw std::invalid_argument("main_term_coeff_below_one: wants k > 1");
  if (k >= 64 || s <= (uint64_t(1) << k))
    throw std::invalid_argument("main_term_coeff_below_one: wants s > 2^k");
  return main_term_coefficient(s, k).unpowered < 1.0;
}

BinaryDecomposition binary_decomposition(uint64_t s) {
  if (s < 1) throw std::invalid_argument("binary_decomposition: s must be >= 1");
  BinaryDecomposition d;
  for (int b = 63; b >= 0; --b)
    if (s & (uint64_t(1) << b)) d.indices.push_back(static_cast<uint32_t>(b));
  return d;
}

Rational hua_deficit(uint64_t s) {
  const auto d = binary_decomposition(s);
  const std::size_t t = d.indices.size();
  // num / 2^{t-1} with num = sum_{i<t} (j_i+i)*2^{t-1-i} + (j_t + t - 1).
  BigInt num = 0;
  for (std::size_t i = 1; i < t; ++i) num += BigInt(d.indices[i - 1] + i) << (t - 1 - i);
  num += d.indices[t - 1] + t - 1;
  Rational q(num, BigInt(1) << (t - 1));
  q.canonicalize();
  return q;
}

Rational hua_deficit_alt(uint64_t s) {
  const auto d = binary_decomposition(s);
  const std::size_t t = d.indices.size();
  BigInt num = 0;
  for (std::size_t i = 1; i < t; ++i) num += BigInt(d.indices[i - 1] + i) << (t - i);
  num += d.indices[t - 1] + t;
  Rational q(num, BigInt(1) << t);
  q.canonicalize();
  return q;
}

const char* formula_tag(ExponentFormula f) {
  switch (f) {
    case ExponentFormula::EqualPowers: return "eq33";
    case ExponentFormula::Preliminary: return "eq42";
    default: return "eq45";
  }
}

ExponentBound exponent_equal_powers(uint64_t s, uint32_t k) {
  if (k < 1) throw std::invalid_argument("exponent_equal_powers: wants k >= 1");
  if (s < 1) throw std::invalid_argument("exponent_equal_powers: wants s >= 1");
  ExponentBound bound;
  bound.formula = ExponentFormula::EqualPowers;
  bound.epsilon_slots = 1;
  Rational deficit = hua_deficit(s);
  Rational base = (Rational(static_cast<unsigned long>(s)) - deficit) /
                  Rational(static_cast<unsigned long>(k));
  base.canonicalize();
  bound.base_exponent = base;

  const auto d = binary_decomposition(s);
  const uint32_t j1 = d.indices.front();
  const bool single = d.indices.size() == 1;
  const uint32_t need = single ? j1 : j1 + 1;  // power of two skips the
                                               // Cauchy-Schwarz step
  if (s < 2) {
    bound.validity.ok = false;
    bound.validity.notes.push_back("s must be >= 2 for the chained bound");
  }
  if (need > k) {
    bound.validity.ok = false;
    std::ostringstream os;
    os << "moment-lemma range needs " << need << " <= k, got k = " << k;
    bound.validity.notes.push_back(os.str());
  }
  return bound;
}

ExponentBound exponent_mixed_powers(const std::vector<uint32_t>& ks) {
  const std::size_t s = ks.size();
  if (s < 2) throw std::invalid_argument("exponent_mixed_powers: wants >= 2 factors");
  for (std::size_t i = 0; i < s; ++i) {
    if (ks[i] < 1) throw std::invalid_argument("exponent_mixed_powers: wants k >= 1");
    if (i && ks[i] > ks[i - 1])
      throw std::invalid_argument(
          "exponent_mixed_powers: exponents must be sorted descending");
  }
  if (s > 62) throw std::invalid_argument("exponent_mixed_powers: too many factors");

  ExponentBound bound;
  bound.formula = ExponentFormula::MixedChain;
  bound.epsilon_slots = s;

  // Peeling factors smallest-k first: factor s-i+1 carries weight
  // (2^i - i)/2^i, the leftover factor 1 carries (2^{s-1}-s+1)/2^{s-1}.
  Rational total(0);
  for (std::size_t i = 1; i <= s - 1; ++i) {
    BigInt num = (BigInt(1) << i) - i;
    BigInt den = (BigInt(1) << i) * ks[s - i];
    Rational term(num, den);
    term.canonicalize();
    total += term;
  }
  {
    BigInt num = (BigInt(1) << (s - 1)) - s + 1;
    BigInt den = (BigInt(1) << (s - 1)) * ks[0];
    Rational term(num, den);
    term.canonicalize();
    total += term;
  }
  total.canonicalize();
  bound.base_exponent = total;

  for (std::size_t i = 1; i <= s - 1; ++i)
    if (ks[s - i] < i) {
      bound.validity.ok = false;
      std::ostringstream os;
      os << "factor " << (s - i + 1) << " needs exponent >= " << i << ", got "
         << ks[s - i];
      bound.validity.notes.push_back(os.str());
    }
  if (ks[0] < s - 1) {
    bound.validity.ok = false;
    std::ostringstream os;
    os << "leading exponent needs >= " << (s - 1) << ", got " << ks[0];
    bound.validity.notes.push_back(os.str());
  }
  return bound;
}

Rational preliminary_exponent(const std::vector<uint32_t>& ks) {
  if (ks.empty()) throw std::invalid_argument("preliminary_exponent: empty list");
  Rational total(0);
  for (uint32_t k : ks) {
    if (k < 1) throw std::invalid_argument("preliminary_exponent: wants k >= 1");
    total += make_rational(1, k);
  }
  total.canonicalize();
  return total;
}

ComparisonReport exponent_comparison(const std::vector<uint32_t>& ks) {
  ComparisonReport report;
  report.ks = ks;
  ExponentBound chained = exponent_mixed_powers(ks);
  report.preliminary = preliminary_exponent(ks);
  report.chained = chained.base_exponent;
  report.gap = report.preliminary - report.chained;
  report.gap.canonicalize();
  report.validity = chained.validity;
  return report;
}

std::string comparisons_to_csv(const std::vector<ComparisonReport>& reports) {
  std::ostringstream os;
  os << "ks,eq42,eq45,gap\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.ks.size(); ++i) os << (i ? ";" : "") << r.ks[i];
    os << ',' << rational_str(r.preliminary) << ',' << rational_str(r.chained) << ','
       << rational_str(r.gap) << '\n';
  }
  return os.str();
}

namespace {

nlohmann::json rational_json(const Rational& q) {
  return {{"num", static_cast<int64_t>(q.get_num().get_si())},
          {"den", static_cast<int64_t>(q.get_den().get_si())}};
}

nlohmann::json validity_json(const ValidityReport& v) {
  return {{"ok", v.ok}, {"notes", v.notes}};
}

}  // namespace

nlohmann::json exponent_to_json(const ExponentBound& bound) {
  return {{"formula", formula_tag(bound.formula)},
          {"exponent", rational_json(bound.base_exponent)},
          {"epsilon_slots", bound.epsilon_slots},
          {"validity", validity_json(bound.validity)}};
}

nlohmann::json comparison_to_json(const ComparisonReport& report) {
  return {{"ks", report.ks},
          {"eq42", rational_json(report.preliminary)},
          {"eq45", rational_json(report.chained)},
          {"gap", rational_json(report.gap)},
          {"validity", validity_json(report.validity)}};
}

double linear_main_term(const std::vector<uint64_t>& as, uint64_t n) {
  if (as.empty()) throw std::invalid_argument("linear_main_term: empty coefficients");
  for (uint64_t a : as)
    if (a < 1) throw std::invalid_argument("linear_main_term: wants a_i >= 1");
  const std::size_t s = as.size();
  BigInt num = pow_big(n, s - 1);
  BigInt den = factorial(static_cast<unsigned long>(s - 1));
  for (uint64_t a : as) den *= a;
  Rational q(num, den);
  q.canonicalize();
  double d = q.get_d();
  if (std::isfinite(d) && (d != 0.0 || num == 0)) return d;
  // Exact value over/underflows double range: go through logarithms.
  return std::exp(static_cast<double>(s - 1) * std::log(static_cast<double>(n)) -
                  log_big(den));
}

SlopeFit empirical_slope(const SweepTable& table, bool summatory) {
  std::vector<double> xs, ys;
  xs.reserve(table.records.size());
  ys.reserve(table.records.size());
  BigInt running = 0;
  for (const auto& rec : table.records) {
    const BigInt* value = &rec.count;
    if (summatory) {
      running += rec.count;
      value = &running;
    }
    if (*value <= 0 || rec.n < 1) continue;  // log wants positive points
    xs.push_back(std::log(static_cast<double>(rec.n)));
    ys.push_back(log_big(*value));
  }
  if (xs.size() < 4)
    throw std::invalid_argument(
        "empirical_slope: fewer than 4 usable records with positive counts");
  return fit_linear(xs, ys);
}

}  // namespace diocount
