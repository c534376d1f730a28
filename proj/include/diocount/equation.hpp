#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diocount/bigint.hpp"

namespace diocount {

// Whether variables range over x >= 0 or x >= 1.
enum class SolutionDomain { NonNegative, Positive };

enum class EquationClass { Linear, EqualPowers, MixedPowers };

// One c*x^k term.
struct Term {
  uint64_t coefficient = 1;
  uint32_t exponent = 1;
  friend bool operator==(const Term&, const Term&) = default;
};

// c_1*x_1^k_1 + ... + c_s*x_s^k_s = rhs, with s implicit as terms.size().
struct Equation {
  std::vector<Term> terms;
  uint64_t rhs = 0;
  SolutionDomain domain = SolutionDomain::Positive;

  std::size_t var_count() const { return terms.size(); }
  friend bool operator==(const Equation&, const Equation&) = default;
};

// Equation with the right-hand side left open; sweeps instantiate it per n.
struct EquationTemplate {
  std::vector<Term> terms;
  SolutionDomain domain = SolutionDomain::Positive;

  Equation with_rhs(uint64_t n) const { return Equation{terms, n, domain}; }
  friend bool operator==(const EquationTemplate&, const EquationTemplate&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Equation& eq);

// Throws std::invalid_argument listing the violations when the equation is
// not well formed; counting routines call this on entry.
void require_valid_equation(const Equation& eq);

// Sorts terms by exponent descending, ties by coefficient descending.
// Reordering terms relabels variables bijectively, so every counter is
// invariant under it. Throws std::invalid_argument on an invalid equation.
Equation canonicalize(const Equation& eq);

EquationClass classify(const Equation& eq);

const char* domain_name(SolutionDomain d);
const char* class_name(EquationClass c);

// Renders "3x^1 + 2x^1 = 5".
std::string to_text(const Equation& eq);
std::string to_text(const EquationTemplate& t);

// Accepts three input forms:
//   mini-grammar   "3x^1 + 2x^1 = 5"   (coefficient and ^k optional: "x+x=2")
//   compact        "[[3,1],[2,1]] ; 5 ; positive"
//   JSON           {"terms":[[3,1],[2,1]],"rhs":5,"domain":"positive"}
// The mini-grammar carries no domain; compact and JSON may. `fallback` fills
// the domain when the text does not name one. Throws ParseError with the
// offending position.
Equation parse_equation(const std::string& text,
                        SolutionDomain fallback = SolutionDomain::Positive);

// Same forms, but without a right-hand side ("x^2+x^2", "[[1,2],[1,2]] ; positive",
// or JSON without "rhs").
EquationTemplate parse_template(const std::string& text,
                                SolutionDomain fallback = SolutionDomain::Positive);

std::optional<SolutionDomain> parse_domain(const std::string& word);

// JSON schema: {"terms":[[c,k],...],"rhs":n,"domain":"positive"|"nonnegative"}
void to_json(nlohmann::json& j, const Equation& eq);
void from_json(const nlohmann::json& j, Equation& eq);
void to_json(nlohmann::json& j, const EquationTemplate& t);
void from_json(const nlohmann::json& j, EquationTemplate& t);

}  // namespace diocount
