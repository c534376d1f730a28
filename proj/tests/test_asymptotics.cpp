#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diocount/asymptotics.hpp"
#include "diocount/exact_count.hpp"
#include "diocount/fit.hpp"

using namespace diocount;

namespace {

Rational q(long long num, unsigned long long den) { return make_rational(num, den); }

}  // namespace

TEST_CASE("least-squares line through exact points") {
  std::vector<double> xs = {1, 2, 3, 4, 5};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.0 * x + 2.0);
  SlopeFit fit = fit_linear(xs, ys);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.points == 5);
}

TEST_CASE("least-squares input validation") {
  CHECK_THROWS_AS(fit_linear({1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_linear({1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_linear({2, 2, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("gamma at half-integers and integers") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(gamma_fn(2.5) / gamma_fn(1.5) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  double f = 1.0;
  for (int n = 1; n <= 15; ++n) {
    if (n > 1) f *= n - 1;
    CHECK(gamma_fn(double(n)) == doctest::Approx(f).epsilon(1e-13));
  }
}

TEST_CASE("gamma satisfies its functional equation across the range") {
  for (int i = 1; i <= 300; ++i) {
    double x = i / 10.0;
    CAPTURE(x);
    CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
  }
}

TEST_CASE("gamma rejects the closed left half-line") {
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("main-term coefficient in both readings") {
  MainTermCoefficient two_linear = main_term_coefficient(2, 1);
  CHECK(two_linear.unpowered == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(two_linear.powered == doctest::Approx(1.0).epsilon(1e-12));

  MainTermCoefficient five_squares = main_term_coefficient(5, 2);
  CHECK(five_squares.unpowered == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // Gamma(3/2)^5 / Gamma(5/2) = pi^2/24 = 0.41123351671205665...
  CHECK(five_squares.powered ==
        doctest::Approx(M_PI * M_PI / 24.0).epsilon(1e-10));
}

TEST_CASE("coefficient drops below one past the threshold") {
  CHECK(main_term_coeff_below_one(5, 2));
  CHECK(main_term_coeff_below_one(6, 2));
  CHECK(main_term_coeff_below_one(9, 3));
  CHECK_THROWS_AS(main_term_coeff_below_one(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(main_term_coeff_below_one(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(main_term_coeff_below_one(8, 3), std::invalid_argument);
}

TEST_CASE("binary decompositions") {
  CHECK(binary_decomposition(1).indices == std::vector<uint32_t>{0});
  CHECK(binary_decomposition(3).indices == std::vector<uint32_t>{1, 0});
  CHECK(binary_decomposition(4).indices == std::vector<uint32_t>{2});
  CHECK(binary_decomposition(13).indices == std::vector<uint32_t>{3, 2, 0});
  uint64_t recovered = 0;
  for (uint32_t idx : binary_decomposition(123456789).indices)
    recovered += uint64_t(1) << idx;
  CHECK(recovered == 123456789);
}

TEST_CASE("chained-moment deficit at small sizes") {
  CHECK(hua_deficit(2) == q(1, 1));
  CHECK(hua_deficit(3) == q(3, 2));
  CHECK(hua_deficit(4) == q(2, 1));
  CHECK(hua_deficit(5) == q(2, 1));
  CHECK(hua_deficit(6) == q(5, 2));
}

TEST_CASE("deficit never exceeds floor(log2 s) + 1") {
  for (uint64_t s = 2; s <= 1'000'000; s = s + 1 + s / 7) {
    Rational bound(uint64_t(std::floor(std::log2(double(s)))) + 1);
    CAPTURE(s);
    CHECK(hua_deficit(s) <= bound);
  }
  CHECK(hua_deficit(1'000'000) <= Rational(20));
}

TEST_CASE("deficit variant differs exactly where expected") {
  CHECK(hua_deficit_alt(2) == q(1, 1));
  CHECK(hua_deficit_alt(3) == q(3, 2));
  CHECK(hua_deficit_alt(4) == q(3, 2));  // main form gives 2 here
  CHECK(hua_deficit_alt(5) == q(2, 1));
  CHECK(hua_deficit_alt(6) == q(9, 4));  // main form gives 5/2
  CHECK(hua_deficit(4) != hua_deficit_alt(4));
  CHECK(hua_deficit(5) == hua_deficit_alt(5));
}

TEST_CASE("equal-power exponent bounds") {
  ExponentBound two_cubes = exponent_equal_powers(2, 3);
  CHECK(two_cubes.base_exponent == q(1, 3));
  CHECK(two_cubes.validity.ok);
  CHECK(two_cubes.epsilon_slots == 1);
  CHECK(std::string(formula_tag(two_cubes.formula)) == "eq33");

  ExponentBound three_squares = exponent_equal_powers(3, 2);
  CHECK(three_squares.base_exponent == q(3, 4));
  CHECK(three_squares.validity.ok);

  ExponentBound four_squares = exponent_equal_powers(4, 2);
  CHECK(four_squares.base_exponent == q(1, 1));
  CHECK(four_squares.validity.ok);

  ExponentBound five_squares = exponent_equal_powers(5, 2);
  CHECK(five_squares.base_exponent == q(3, 2));
  CHECK(!five_squares.validity.ok);
  REQUIRE(!five_squares.validity.notes.empty());
}

TEST_CASE("mixed-power chain on a cube with a square") {
  ExponentBound bound = exponent_mixed_powers({3, 2});
  CHECK(bound.base_exponent == q(5, 12));
  CHECK(bound.validity.ok);
  CHECK(bound.epsilon_slots == 2);
  CHECK(std::string(formula_tag(bound.formula)) == "eq45");
}

TEST_CASE("mixed-power chain on equal squares") {
  CHECK(exponent_mixed_powers({2, 2, 2}).base_exponent == q(3, 4));
  CHECK(exponent_mixed_powers({2, 2, 2, 2}).base_exponent == q(9, 8));
  CHECK(exponent_mixed_powers({1, 1}).validity.ok);
  CHECK(exponent_mixed_powers({1, 1}).base_exponent == q(1, 1));
}

TEST_CASE("mixed-power chain input validation") {
  CHECK_THROWS_AS(exponent_mixed_powers({2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(exponent_mixed_powers({2}), std::invalid_argument);
  CHECK_THROWS_AS(exponent_mixed_powers({}), std::invalid_argument);
}

TEST_CASE("the chain specializes to the equal-power bound at s = 2 and 3") {
  for (uint32_t k = 1; k <= 6; ++k) {
    if (k >= 2)
      CHECK(exponent_mixed_powers({k, k}).base_exponent ==
            exponent_equal_powers(2, k).base_exponent);
    CHECK(exponent_mixed_powers({k, k, k}).base_exponent == q(3, 2 * k));
    if (k >= 2)
      CHECK(exponent_equal_powers(3, k).base_exponent == q(3, 2 * k));
  }
  // At s = 4 the generic chain is strictly weaker than the equal-power form:
  // 9/4k against 2/k.
  for (uint32_t k = 2; k <= 6; ++k) {
    Rational chained = exponent_mixed_powers({k, k, k, k}).base_exponent;
    CHECK(chained == q(9, 4 * k));
    CHECK(chained > exponent_equal_powers(4, k).base_exponent);
  }
}

TEST_CASE("one-line bound and its gap") {
  CHECK(preliminary_exponent({2, 2}) == q(1, 1));
  CHECK(preliminary_exponent({3, 2}) == q(5, 6));
  CHECK(preliminary_exponent({2, 2, 2, 2}) == q(2, 1));

  ComparisonReport cube_square = exponent_comparison({3, 2});
  CHECK(cube_square.preliminary == q(5, 6));
  CHECK(cube_square.chained == q(5, 12));
  CHECK(cube_square.gap == q(5, 12));
  CHECK(cube_square.validity.ok);

  CHECK(exponent_comparison({2, 2, 2}).gap == q(3, 4));
  CHECK(exponent_comparison({4, 3, 2}).gap == q(13, 24));
}

TEST_CASE("the chained bound always improves on the one-line bound") {
  // Exhaustive over non-increasing exponent tuples: s <= 6 terms, each
  // between 1 and 8, keeping only tuples the chain's validity accepts.
  std::vector<uint32_t> ks;
  uint64_t checked = 0;
  auto rec = [&](auto&& self, uint32_t max_k, uint32_t remaining) -> void {
    if (ks.size() >= 2) {
      ComparisonReport rep = exponent_comparison(ks);
      if (rep.validity.ok) {
        ++checked;
        CAPTURE(ks.size());
        CHECK(rep.gap > Rational(0));
      }
    }
    if (remaining == 0) return;
    for (uint32_t k = 1; k <= max_k; ++k) {
      ks.push_back(k);
      self(self, k, remaining - 1);
      ks.pop_back();
    }
  };
  rec(rec, 8, 6);
  CHECK(checked > 1000);
}

TEST_CASE("comparison csv shape") {
  std::string csv = comparisons_to_csv({exponent_comparison({3, 2})});
  CHECK(csv == "ks,eq42,eq45,gap\n3;2,5/6,5/12,5/12\n");
}

TEST_CASE("exponent json shape") {
  nlohmann::json j = exponent_to_json(exponent_mixed_powers({3, 2}));
  CHECK(j["formula"] == "eq45");
  CHECK(j["exponent"]["num"] == 5);
  CHECK(j["exponent"]["den"] == 12);
  CHECK(j["epsilon_slots"] == 2);
  CHECK(j["validity"]["ok"] == true);
  nlohmann::json c = comparison_to_json(exponent_comparison({3, 2}));
  CHECK(c["gap"]["num"] == 5);
  CHECK(c["gap"]["den"] == 12);
}

TEST_CASE("linear main term at exact values") {
  CHECK(linear_main_term({3, 2}, 600) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(linear_main_term({1, 1}, 10) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(linear_main_term({1, 1, 1}, 100) == doctest::Approx(5000.0).epsilon(1e-12));
}

TEST_CASE("linear main term survives values far beyond factorial range") {
  // 60 unit coefficients at n = 10^6: the exact rational is ~7e273, near the
  // top of double range; check against log-space arithmetic.
  std::vector<uint64_t> as(60, 1);
  double v = linear_main_term(as, 1'000'000);
  REQUIRE(std::isfinite(v));
  double expected_log = 59.0 * std::log(1e6) - std::lgamma(60.0);
  CHECK(std::log(v) == doctest::Approx(expected_log).epsilon(1e-9));
}

TEST_CASE("empirical slope on synthetic quadratic data") {
  SweepTable table;
  for (uint64_t n = 10; n <= 200; n += 10) {
    SweepRecord r;
    r.n = n;
    r.count = BigInt(long(n)) * long(n);
    table.records.push_back(r);
  }
  SlopeFit fit = empirical_slope(table, /*summatory=*/false);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("empirical slope for a two-term linear equation, raw counts") {
  EquationTemplate tmpl{{Term{1, 1}, Term{1, 1}}, SolutionDomain::Positive};
  std::vector<uint64_t> ns;
  for (uint64_t n = 10; n <= 1000; n *= 2) ns.push_back(n);
  SweepTable table = count_sweep(tmpl, ns);
  SlopeFit fit = empirical_slope(table, false);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("summatory slope approaches s/k on dense sweeps") {
  // Three squares: raw counts bounce (most n are not sums of three positive
  // squares) but the cumulative count grows like n^{3/2}.
  EquationTemplate squares{{Term{1, 2}, Term{1, 2}, Term{1, 2}},
                           SolutionDomain::Positive};
  std::vector<uint64_t> ns;
  for (uint64_t n = 1; n <= 10'000; ++n) ns.push_back(n);
  SlopeFit sq = empirical_slope(count_sweep(squares, ns), true);
  CHECK(sq.slope == doctest::Approx(1.5).epsilon(0.07));

  EquationTemplate linear{{Term{1, 1}, Term{1, 1}, Term{1, 1}},
                          SolutionDomain::Positive};
  SlopeFit lin = empirical_slope(count_sweep(linear, ns), true);
  CHECK(lin.slope == doctest::Approx(3.0).epsilon(0.04));
}

TEST_CASE("empirical slope needs four usable points") {
  SweepTable table;
  for (uint64_t n : {1, 2, 3}) {
    SweepRecord r;
    r.n = n;
    r.count = 1;
    table.records.push_back(r);
  }
  CHECK_THROWS_AS(empirical_slope(table, false), std::invalid_argument);

  SweepTable zeros;
  for (uint64_t n = 1; n <= 10; ++n) {
    SweepRecord r;
    r.n = n;
    r.count = 0;
    zeros.records.push_back(r);
  }
  CHECK_THROWS_AS(empirical_slope(zeros, false), std::invalid_argument);
}
