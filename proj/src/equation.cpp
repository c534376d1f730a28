#include "diocount/equation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "diocount/errors.hpp"

namespace diocount {

ValidationReport validate(const Equation& eq) {
  ValidationReport report;
  if (eq.terms.empty()) report.violations.push_back("empty term list");
  for (std::size_t i = 0; i < eq.terms.size(); ++i) {
    if (eq.terms[i].coefficient == 0)
      report.violations.push_back("coefficient must be >= 1 (term " + std::to_string(i + 1) + ")");
    if (eq.terms[i].exponent == 0)
      report.violations.push_back("exponent must be >= 1 (term " + std::to_string(i + 1) + ")");
  }
  return report;
}

void require_valid_equation(const Equation& eq) {
  auto report = validate(eq);
  if (!report.ok()) {
    std::string msg = "invalid equation:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
}

Equation canonicalize(const Equation& eq) {
  require_valid_equation(eq);
  Equation out = eq;
  std::stable_sort(out.terms.begin(), out.terms.end(), [](const Term& a, const Term& b) {
    if (a.exponent != b.exponent) return a.exponent > b.exponent;
    return a.coefficient > b.coefficient;
  });
  return out;
}

EquationClass classify(const Equation& eq) {
  require_valid_equation(eq);
  bool all_one = true, all_equal = true;
  uint32_t first = eq.terms.front().exponent;
  for (const auto& t : eq.terms) {
    all_one &= t.exponent == 1;
    all_equal &= t.exponent == first;
  }
  if (all_one) return EquationClass::Linear;
  if (all_equal) return EquationClass::EqualPowers;
  return EquationClass::MixedPowers;
}

const char* domain_name(SolutionDomain d) {
  return d == SolutionDomain::Positive ? "positive" : "nonnegative";
}

const char* class_name(EquationClass c) {
  switch (c) {
    case EquationClass::Linear: return "linear";
    case EquationClass::EqualPowers: return "equal-powers";
    default: return "mixed-powers";
  }
}

static std::string terms_text(const std::vector<Term>& terms) {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    if (terms[i].coefficient != 1) os << terms[i].coefficient;
    os << "x^" << terms[i].exponent;
  }
  return os.str();
}

std::string to_text(const Equation& eq) {
  return terms_text(eq.terms) + " = " + std::to_string(eq.rhs);
}

std::string to_text(const EquationTemplate& t) { return terms_text(t.terms); }

std::optional<SolutionDomain> parse_domain(const std::string& word) {
  std::string w;
  for (char c : word)
    if (!std::isspace(static_cast<unsigned char>(c))) w += static_cast<char>(std::tolower(c));
  if (w == "positive" || w == "pos") return SolutionDomain::Positive;
  if (w == "nonnegative" || w == "nonneg" || w == "non-negative") return SolutionDomain::NonNegative;
  return std::nullopt;
}

namespace {

// Hand parser for the mini-grammar: terms are [digits]['*']'x'['^' digits]
// joined by '+', optionally followed by '=' digits. Whitespace-insensitive;
// positions reported against the original string.
class GrammarParser {
 public:
  explicit GrammarParser(const std::string& s) : s_(s) {}

  std::vector<Term> parse_terms() {
    std::vector<Term> terms;
    terms.push_back(parse_term());
    while (true) {
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] == '=') break;
      expect('+');
      terms.push_back(parse_term());
    }
    return terms;
  }

  std::optional<uint64_t> parse_rhs_if_present() {
    skip_ws();
    if (pos_ >= s_.size()) return std::nullopt;
    expect('=');
    skip_ws();
    uint64_t value = parse_number("right-hand side");
    skip_ws();
    if (pos_ < s_.size()) throw ParseError("trailing characters after right-hand side", pos_);
    return value;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  uint64_t parse_number(const char* what) {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError(std::string("expected ") + what, pos_);
    uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      uint64_t digit = static_cast<uint64_t>(s_[pos_] - '0');
      if (v > (UINT64_MAX - digit) / 10)
        throw ParseError(std::string(what) + " out of range", pos_);
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  Term parse_term() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("expected term", pos_);
    Term t;
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      t.coefficient = parse_number("coefficient");
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') ++pos_;
    }
    skip_ws();
    if (pos_ >= s_.size() || (s_[pos_] != 'x' && s_[pos_] != 'X'))
      throw ParseError("expected variable 'x'", pos_);
    ++pos_;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      uint64_t k = parse_number("exponent");
      if (k == 0 || k > UINT32_MAX) throw ParseError("exponent out of range", pos_);
      t.exponent = static_cast<uint32_t>(k);
    }
    return t;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::vector<Term> terms_from_json_array(const nlohmann::json& arr, std::size_t err_pos) {
  if (!arr.is_array()) throw ParseError("\"terms\" must be an array of [c,k] pairs", err_pos);
  std::vector<Term> terms;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
        !pair[1].is_number_unsigned())
      throw ParseError("each term must be a [c,k] pair of naturals", err_pos);
    terms.push_back(Term{pair[0].get<uint64_t>(),
                         static_cast<uint32_t>(pair[1].get<uint64_t>())});
  }
  return terms;
}

char first_meaningful_char(const std::string& text) {
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) return c;
  return '\0';
}

std::vector<std::string> split_semicolons(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

nlohmann::json parse_json_or_throw(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON", 0);
  return j;
}

uint64_t natural_from_field(const std::string& field, const char* what, std::size_t err_pos) {
  std::string trimmed;
  for (char c : field)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed.empty() || trimmed.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string("bad ") + what + " \"" + trimmed + "\"", err_pos);
  try {
    return std::stoull(trimmed);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + " out of range \"" + trimmed + "\"", err_pos);
  }
}

}  // namespace

Equation parse_equation(const std::string& text, SolutionDomain fallback) {
  char lead = first_meaningful_char(text);
  if (lead == '\0') throw ParseError("empty equation", 0);

  if (lead == '{') {
    nlohmann::json j = parse_json_or_throw(text);
    Equation eq;
    if (!j.contains("terms")) throw ParseError("missing \"terms\"", 0);
    eq.terms = terms_from_json_array(j["terms"], 0);
    if (!j.contains("rhs") || !j["rhs"].is_number_unsigned())
      throw ParseError("missing or non-natural \"rhs\"", 0);
    eq.rhs = j["rhs"].get<uint64_t>();
    eq.domain = fallback;
    if (j.contains("domain")) {
      auto d = parse_domain(j["domain"].get<std::string>());
      if (!d) throw ParseError("unknown domain \"" + j["domain"].get<std::string>() + "\"", 0);
      eq.domain = *d;
    }
    return eq;
  }

  if (lead == '[') {
    auto parts = split_semicolons(text);
    if (parts.size() < 2 || parts.size() > 3)
      throw ParseError("compact form is \"[[c,k],...] ; rhs ; domain\"", 0);
    Equation eq;
    eq.terms = terms_from_json_array(parse_json_or_throw(parts[0]), 0);
    eq.rhs = natural_from_field(parts[1], "right-hand side", parts[0].size() + 1);
    eq.domain = fallback;
    if (parts.size() == 3) {
      auto d = parse_domain(parts[2]);
      if (!d) throw ParseError("unknown domain \"" + parts[2] + "\"",
                               parts[0].size() + parts[1].size() + 2);
      eq.domain = *d;
    }
    return eq;
  }

  GrammarParser p(text);
  Equation eq;
  eq.terms = p.parse_terms();
  auto rhs = p.parse_rhs_if_present();
  if (!rhs) throw ParseError("missing '=' and right-hand side", text.size());
  eq.rhs = *rhs;
  eq.domain = fallback;
  return eq;
}

EquationTemplate parse_template(const std::string& text, SolutionDomain fallback) {
  char lead = first_meaningful_char(text);
  if (lead == '\0') throw ParseError("empty equation template", 0);

  if (lead == '{') {
    nlohmann::json j = parse_json_or_throw(text);
    EquationTemplate t;
    if (!j.contains("terms")) throw ParseError("missing \"terms\"", 0);
    t.terms = terms_from_json_array(j["terms"], 0);
    t.domain = fallback;
    if (j.contains("domain")) {
      auto d = parse_domain(j["domain"].get<std::string>());
      if (!d) throw ParseError("unknown domain \"" + j["domain"].get<std::string>() + "\"", 0);
      t.domain = *d;
    }
    return t;
  }

  if (lead == '[') {
    auto parts = split_semicolons(text);
    if (parts.size() > 2) throw ParseError("template compact form is \"[[c,k],...] ; domain\"", 0);
    EquationTemplate t;
    t.terms = terms_from_json_array(parse_json_or_throw(parts[0]), 0);
    t.domain = fallback;
    if (parts.size() == 2) {
      auto d = parse_domain(parts[1]);
      if (!d) throw ParseError("unknown domain \"" + parts[1] + "\"", parts[0].size() + 1);
      t.domain = *d;
    }
    return t;
  }

  GrammarParser p(text);
  EquationTemplate t;
  t.terms = p.parse_terms();
  auto rhs = p.parse_rhs_if_present();
  if (rhs) throw ParseError("template must not carry a right-hand side", text.find('='));
  t.domain = fallback;
  return t;
}

void to_json(nlohmann::json& j, const Equation& eq) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : eq.terms) terms.push_back({t.coefficient, t.exponent});
  j = nlohmann::json{{"terms", terms}, {"rhs", eq.rhs}, {"domain", domain_name(eq.domain)}};
}

void from_json(const nlohmann::json& j, Equation& eq) {
  eq = parse_equation(j.dump());
}

void to_json(nlohmann::json& j, const EquationTemplate& t) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& term : t.terms) terms.push_back({term.coefficient, term.exponent});
  j = nlohmann::json{{"terms", terms}, {"domain", domain_name(t.domain)}};
}

void from_json(const nlohmann::json& j, EquationTemplate& t) {
  t = parse_template(j.dump());
}

}  // namespace diocount
