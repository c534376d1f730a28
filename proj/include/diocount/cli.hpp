#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "diocount/asymptotics.hpp"
#include "diocount/budgets.hpp"
#include "diocount/equation.hpp"
#include "diocount/exact_count.hpp"
#include "diocount/expsum.hpp"

namespace diocount {

// How a campaign chooses its right-hand sides.
struct Schedule {
  enum class Kind { Values, Geometric, Range };
  Kind kind = Kind::Geometric;
  std::vector<uint64_t> values;  // Kind::Values
  uint64_t from = 16;            // Geometric / Range
  uint64_t to = 0;
  uint64_t ratio = 2;  // Geometric: from, from*ratio, ... <= to
  uint64_t step = 1;   // Range: from, from+step, ... <= to

  // The concrete, strictly increasing n list. Throws ConfigError when the
  // schedule is empty or ill-formed.
  std::vector<uint64_t> materialize() const;
};

struct CampaignConfig {
  EquationTemplate tmpl;
  Schedule schedule;
  std::vector<CountMethod> methods = {CountMethod::Dp};
  std::string out;             // empty = stdout
  std::string format = "csv";  // csv | json | text
  Budgets budgets;
  unsigned parallel = 1;
  bool fit = false;            // append a slope fit to the report
  bool fit_summatory = true;   // fit cumulative sums rather than raw counts
};

// JSON schema: {"equation": "x^2+x^2" | {...}, "schedule": {"kind": "values",
// "values": [...]} | {"kind":"geometric","from":16,"to":4096,"ratio":2} |
// {"kind":"range","from":1,"to":100,"step":1}, "methods": ["dp"],
// "out": "...", "format": "csv", "budgets": {"nodes":..., "memory":...,
// "samples":...}, "parallel": 1, "fit": {"summatory": true}}
CampaignConfig config_from_json(const nlohmann::json& j);
CampaignConfig load_config(const std::string& path);  // ConfigError when unreadable

struct Verdict {
  std::string name;
  std::string status;  // "pass" | "fail" | "skipped"
  std::string reason;
};

struct RunReport {
  std::string command;
  std::string version;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<Verdict> verdicts;
  double seconds = 0.0;

  bool ok() const;  // true when no verdict failed
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Command drivers. Each embeds its exact inputs, budgets, and the tool
// version in the report; the CLI main maps exceptions to exit codes
// (1 usage/config, 2 cross-check, 3 budget refusal).
RunReport run_count(const std::string& equation_text, SolutionDomain fallback_domain,
                    const std::vector<CountMethod>& methods, const Budgets& budgets,
                    uint64_t samples_override = 0, unsigned parallel = 1);

// Fills *table_out (when non-null) with the sweep for file emission.
RunReport run_sweep(const CampaignConfig& config, SweepTable* table_out = nullptr);

RunReport run_hua(uint32_t k, uint32_t j, const std::vector<uint64_t>& N_values,
                  const Budgets& budgets);

RunReport run_exponents(const std::vector<uint32_t>& ks);

RunReport run_gamma_check();

// Post-processes a sweep emitted earlier (JSON form) into a slope fit.
RunReport run_report(const nlohmann::json& sweep_json, bool summatory);

}  // namespace diocount
