#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diocount/equation.hpp"
#include "diocount/errors.hpp"

using namespace diocount;

static Equation eq_of(std::vector<Term> terms, uint64_t rhs,
                      SolutionDomain d = SolutionDomain::Positive) {
  return Equation{std::move(terms), rhs, d};
}

TEST_CASE("validate accepts well-formed equations and flags defects") {
  Equation five_units = eq_of({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}, 1);
  CHECK(validate(five_units).ok());
  CHECK(five_units.var_count() == 5);

  CHECK_FALSE(validate(eq_of({}, 3)).ok());

  auto zero_coeff = validate(eq_of({{0, 2}}, 3));
  REQUIRE(zero_coeff.violations.size() == 1);
  CHECK(zero_coeff.violations[0].find("coefficient") != std::string::npos);

  auto zero_exp = validate(eq_of({{2, 0}}, 3));
  REQUIRE(zero_exp.violations.size() == 1);
  CHECK(zero_exp.violations[0].find("exponent") != std::string::npos);

  // Violations accumulate rather than short-circuit.
  CHECK(validate(eq_of({{0, 0}}, 1)).violations.size() == 2);
}

TEST_CASE("canonicalize sorts by exponent then coefficient, descending") {
  Equation eq = eq_of({{2, 1}, {1, 3}, {5, 2}, {7, 2}}, 10);
  Equation c = canonicalize(eq);
  CHECK(c.terms == std::vector<Term>{{1, 3}, {7, 2}, {5, 2}, {2, 1}});
  CHECK(c.rhs == 10);
  CHECK(canonicalize(c) == c);  // idempotent
  CHECK_THROWS_AS(canonicalize(eq_of({}, 1)), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize(eq_of({{0, 1}}, 1)), std::invalid_argument);
}

TEST_CASE("classify splits linear / equal-powers / mixed-powers") {
  CHECK(classify(eq_of({{3, 1}, {2, 1}}, 5)) == EquationClass::Linear);
  CHECK(classify(eq_of({{1, 1}}, 5)) == EquationClass::Linear);
  CHECK(classify(eq_of({{1, 2}, {1, 2}}, 25)) == EquationClass::EqualPowers);
  CHECK(classify(eq_of({{1, 5}}, 32)) == EquationClass::EqualPowers);
  CHECK(classify(eq_of({{1, 3}, {1, 2}}, 7)) == EquationClass::MixedPowers);
  CHECK(classify(eq_of({{1, 1}, {1, 2}}, 7)) == EquationClass::MixedPowers);
  CHECK_THROWS_AS(classify(eq_of({}, 1)), std::invalid_argument);

  CHECK(std::string(class_name(EquationClass::Linear)) == "linear");
  CHECK(std::string(class_name(EquationClass::EqualPowers)) == "equal-powers");
  CHECK(std::string(class_name(EquationClass::MixedPowers)) == "mixed-powers");
}

TEST_CASE("text form parses coefficients, exponents, and their defaults") {
  Equation eq = parse_equation("3x^1 + 2x^1 = 5");
  CHECK(eq.terms == std::vector<Term>{{3, 1}, {2, 1}});
  CHECK(eq.rhs == 5);
  CHECK(eq.domain == SolutionDomain::Positive);

  CHECK(parse_equation("x+x=2").terms == std::vector<Term>{{1, 1}, {1, 1}});
  CHECK(parse_equation("2*x^3 + x = 9").terms == std::vector<Term>{{2, 3}, {1, 1}});
  CHECK(parse_equation("  7  x ^ 2+x=10").terms == std::vector<Term>{{7, 2}, {1, 1}});
  CHECK(parse_equation("x^2 + x^2 = 25").rhs == 25);

  Equation nn = parse_equation("x+x=2", SolutionDomain::NonNegative);
  CHECK(nn.domain == SolutionDomain::NonNegative);
}

TEST_CASE("text form reports the offending position") {
  try {
    parse_equation("3x^1 + = 5");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 7);  // the '=' where a term should start
  }
  try {
    parse_equation("3y = 5");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
  }
  CHECK_THROWS_AS(parse_equation("x^2"), ParseError);          // no right-hand side
  CHECK_THROWS_AS(parse_equation("x^0 = 1"), ParseError);      // exponent 0
  CHECK_THROWS_AS(parse_equation("x = 5 junk"), ParseError);   // trailing garbage
  CHECK_THROWS_AS(parse_equation(""), ParseError);
  CHECK_THROWS_AS(parse_equation("   "), ParseError);
}

TEST_CASE("compact form parses terms, rhs, and optional domain") {
  Equation eq = parse_equation("[[3,1],[2,1]] ; 5 ; positive");
  CHECK(eq.terms == std::vector<Term>{{3, 1}, {2, 1}});
  CHECK(eq.rhs == 5);
  CHECK(eq.domain == SolutionDomain::Positive);

  Equation nn = parse_equation("[[1,2],[1,2]] ; 25 ; nonnegative");
  CHECK(nn.domain == SolutionDomain::NonNegative);

  Equation fb = parse_equation("[[1,2]] ; 9", SolutionDomain::NonNegative);
  CHECK(fb.domain == SolutionDomain::NonNegative);

  CHECK_THROWS_AS(parse_equation("[[1,2]]"), ParseError);             // missing rhs
  CHECK_THROWS_AS(parse_equation("[[1,2]] ; x"), ParseError);         // bad rhs
  CHECK_THROWS_AS(parse_equation("[[1,2]] ; 9 ; sideways"), ParseError);
  CHECK_THROWS_AS(parse_equation("[[1]] ; 9"), ParseError);           // term not a pair
}

TEST_CASE("JSON form parses the wire schema") {
  Equation eq = parse_equation(R"({"terms":[[3,1],[2,1]],"rhs":5,"domain":"positive"})");
  CHECK(eq.terms == std::vector<Term>{{3, 1}, {2, 1}});
  CHECK(eq.rhs == 5);

  Equation fb = parse_equation(R"({"terms":[[1,2]],"rhs":9})", SolutionDomain::NonNegative);
  CHECK(fb.domain == SolutionDomain::NonNegative);

  CHECK_THROWS_AS(parse_equation(R"({"terms":[[1,2]]})"), ParseError);
  CHECK_THROWS_AS(parse_equation(R"({"rhs":5})"), ParseError);
  CHECK_THROWS_AS(parse_equation(R"({"terms":[[1,2]],"rhs":5,"domain":"odd"})"), ParseError);
  CHECK_THROWS_AS(parse_equation(R"({"terms":[[1,2)"), ParseError);  // malformed JSON
}

TEST_CASE("parse_domain accepts the documented spellings") {
  CHECK(parse_domain("positive") == SolutionDomain::Positive);
  CHECK(parse_domain("pos") == SolutionDomain::Positive);
  CHECK(parse_domain(" Positive ") == SolutionDomain::Positive);
  CHECK(parse_domain("nonnegative") == SolutionDomain::NonNegative);
  CHECK(parse_domain("nonneg") == SolutionDomain::NonNegative);
  CHECK(parse_domain("non-negative") == SolutionDomain::NonNegative);
  CHECK_FALSE(parse_domain("negative").has_value());
  CHECK(std::string(domain_name(SolutionDomain::Positive)) == "positive");
  CHECK(std::string(domain_name(SolutionDomain::NonNegative)) == "nonnegative");
}

TEST_CASE("to_text renders parseable text") {
  Equation eq = eq_of({{3, 1}, {2, 1}}, 5);
  CHECK(to_text(eq) == "3x^1 + 2x^1 = 5");
  CHECK(to_text(eq_of({{1, 2}, {1, 2}}, 25)) == "x^2 + x^2 = 25");
  CHECK(parse_equation(to_text(eq)) == eq);
}

TEST_CASE("JSON round trip preserves the equation") {
  Equation eq = eq_of({{3, 2}, {2, 1}}, 600, SolutionDomain::NonNegative);
  nlohmann::json j = eq;
  CHECK(j["terms"] == nlohmann::json::parse("[[3,2],[2,1]]"));
  CHECK(j["rhs"] == 600);
  CHECK(j["domain"] == "nonnegative");
  Equation back = j.get<Equation>();
  CHECK(back == eq);
}

TEST_CASE("templates parse all three forms and instantiate per n") {
  EquationTemplate t = parse_template("x^2 + x^2");
  CHECK(t.terms == std::vector<Term>{{1, 2}, {1, 2}});
  Equation eq = t.with_rhs(25);
  CHECK(eq.rhs == 25);
  CHECK(eq.domain == SolutionDomain::Positive);

  EquationTemplate tc = parse_template("[[1,2],[1,2]] ; nonnegative");
  CHECK(tc.domain == SolutionDomain::NonNegative);

  EquationTemplate tj = parse_template(R"({"terms":[[1,2],[1,2]],"domain":"nonnegative"})");
  CHECK(tj == tc);

  CHECK_THROWS_AS(parse_template("x^2 = 25"), ParseError);  // rhs not allowed

  nlohmann::json j = tc;
  CHECK(j.get<EquationTemplate>() == tc);
}
