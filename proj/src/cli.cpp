#include "diocount/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "diocount/errors.hpp"
#include "diocount/version.hpp"

namespace diocount {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

nlohmann::json budgets_json(const Budgets& b) {
  return {{"nodes", b.max_nodes},
          {"memory", b.max_memory_bytes},
          {"samples", b.max_samples}};
}

Budgets budgets_from_json(const nlohmann::json& j) {
  Budgets b;
  if (j.contains("nodes")) b.max_nodes = j.at("nodes").get<uint64_t>();
  if (j.contains("memory")) b.max_memory_bytes = j.at("memory").get<uint64_t>();
  if (j.contains("samples")) b.max_samples = j.at("samples").get<uint64_t>();
  if (b.max_nodes == 0 || b.max_memory_bytes == 0 || b.max_samples == 0)
    throw ConfigError("budgets must be positive");
  return b;
}

RunReport make_report(const std::string& command) {
  RunReport report;
  report.command = command;
  report.version = DIOCOUNT_VERSION;
  return report;
}

}  // namespace

std::vector<uint64_t> Schedule::materialize() const {
  std::vector<uint64_t> out;
  switch (kind) {
    case Kind::Values:
      out = values;
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 1) throw ConfigError("schedule values must be >= 1");
        if (i && out[i] <= out[i - 1])
          throw ConfigError("schedule values must be strictly increasing");
      }
      break;
    case Kind::Geometric: {
      if (from < 1) throw ConfigError("geometric schedule wants from >= 1");
      if (ratio < 2) throw ConfigError("geometric schedule wants ratio >= 2");
      if (to < from) throw ConfigError("geometric schedule wants to >= from");
      for (uint64_t n = from; n <= to; ) {
        out.push_back(n);
        if (n > to / ratio) break;  // next step would overflow or pass `to`
        n *= ratio;
      }
      break;
    }
    case Kind::Range: {
      if (from < 1) throw ConfigError("range schedule wants from >= 1");
      if (step < 1) throw ConfigError("range schedule wants step >= 1");
      if (to < from) throw ConfigError("range schedule wants to >= from");
      for (uint64_t n = from; n <= to; n += step) {
        out.push_back(n);
        if (n > UINT64_MAX - step) break;
      }
      break;
    }
  }
  if (out.empty()) throw ConfigError("schedule is empty");
  return out;
}

CampaignConfig config_from_json(const nlohmann::json& j) {
  CampaignConfig config;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("equation")) throw ConfigError("config needs an \"equation\"");
  try {
    if (j.at("equation").is_string())
      config.tmpl = parse_template(j.at("equation").get<std::string>());
    else
      config.tmpl = parse_template(j.at("equation").dump());
  } catch (const ParseError& e) {
    throw ConfigError(std::string("bad equation: ") + e.what());
  }

  if (!j.contains("schedule")) throw ConfigError("config needs a \"schedule\"");
  const auto& sj = j.at("schedule");
  std::string kind = sj.value("kind", std::string("values"));
  if (kind == "values") {
    config.schedule.kind = Schedule::Kind::Values;
    if (!sj.contains("values")) throw ConfigError("values schedule needs \"values\"");
    config.schedule.values = sj.at("values").get<std::vector<uint64_t>>();
  } else if (kind == "geometric") {
    config.schedule.kind = Schedule::Kind::Geometric;
    config.schedule.from = sj.value("from", uint64_t(16));
    config.schedule.ratio = sj.value("ratio", uint64_t(2));
    if (!sj.contains("to")) throw ConfigError("geometric schedule needs \"to\"");
    config.schedule.to = sj.at("to").get<uint64_t>();
  } else if (kind == "range") {
    config.schedule.kind = Schedule::Kind::Range;
    config.schedule.from = sj.value("from", uint64_t(1));
    config.schedule.step = sj.value("step", uint64_t(1));
    if (!sj.contains("to")) throw ConfigError("range schedule needs \"to\"");
    config.schedule.to = sj.at("to").get<uint64_t>();
  } else {
    throw ConfigError("unknown schedule kind \"" + kind + "\"");
  }
  config.schedule.materialize();  // validate now, fail early

  if (j.contains("methods")) {
    config.methods.clear();
    for (const auto& m : j.at("methods")) {
      auto parsed = parse_method(m.get<std::string>());
      if (!parsed) throw ConfigError("unknown method \"" + m.get<std::string>() + "\"");
      config.methods.push_back(*parsed);
    }
    if (config.methods.empty()) throw ConfigError("methods list is empty");
  }

  config.out = j.value("out", std::string());
  config.format = j.value("format", std::string("csv"));
  if (config.format != "csv" && config.format != "json" && config.format != "text")
    throw ConfigError("format must be csv, json, or text");
  if (j.contains("budgets")) config.budgets = budgets_from_json(j.at("budgets"));
  config.parallel = j.value("parallel", 1u);
  if (config.parallel < 1) throw ConfigError("parallel must be >= 1");
  if (j.contains("fit")) {
    config.fit = true;
    if (j.at("fit").is_boolean()) {
      config.fit = j.at("fit").get<bool>();
    } else if (j.at("fit").is_object()) {
      config.fit_summatory = j.at("fit").value("summatory", true);
    } else {
      throw ConfigError("\"fit\" must be a bool or an object");
    }
  }
  return config;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file \"" + path + "\"");
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw ConfigError("config file \"" + path + "\" is not valid JSON");
  return config_from_json(j);
}

bool RunReport::ok() const {
  for (const auto& v : verdicts)
    if (v.status == "fail") return false;
  return true;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json vj = nlohmann::json::array();
  for (const auto& v : verdicts)
    vj.push_back({{"name", v.name}, {"status", v.status}, {"reason", v.reason}});
  return {{"command", command}, {"version", version},   {"inputs", inputs},
          {"results", results}, {"verdicts", vj},       {"seconds", seconds}};
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << command << " (diocount " << version << ")\n";
  if (!inputs.empty()) os << "inputs: " << inputs.dump() << "\n";
  if (!results.empty()) os << "results: " << results.dump(2) << "\n";
  for (const auto& v : verdicts) {
    std::string tag = v.status == "pass" ? "PASS" : v.status == "fail" ? "FAIL" : "SKIP";
    os << tag << " " << v.name;
    if (!v.reason.empty()) os << ": " << v.reason;
    os << "\n";
  }
  char secs[32];
  std::snprintf(secs, sizeof(secs), "%.3f", seconds);
  os << secs << " s\n";
  return os.str();
}

RunReport run_count(const std::string& equation_text, SolutionDomain fallback_domain,
                    const std::vector<CountMethod>& methods, const Budgets& budgets,
                    uint64_t samples_override, unsigned parallel) {
  double t0 = now_seconds();
  Equation eq = parse_equation(equation_text, fallback_domain);
  require_valid_equation(eq);

  std::vector<CountMethod> wanted = methods;
  if (wanted.empty()) wanted.push_back(CountMethod::Dp);

  RunReport report = make_report("count");
  report.inputs = {{"equation", eq},
                   {"class", class_name(classify(eq))},
                   {"budgets", budgets_json(budgets)}};
  if (samples_override) report.inputs["samples_override"] = samples_override;

  nlohmann::json counts = nlohmann::json::object();
  std::vector<std::pair<CountMethod, BigInt>> values;
  for (CountMethod m : wanted) {
    BigInt c;
    switch (m) {
      case CountMethod::Brute: c = count_brute_force(eq, budgets); break;
      case CountMethod::Dp: c = count_dp(eq, budgets); break;
      case CountMethod::Fourier: {
        FourierOptions opts;
        opts.budgets = budgets;
        opts.samples_override = samples_override;
        opts.parallel = parallel;
        c = fourier_count(eq, opts);
        break;
      }
    }
    counts[method_name(m)] = c.get_str();
    values.emplace_back(m, c);
  }
  report.results["counts"] = counts;

  if (values.size() > 1) {
    bool agree = true;
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i].second != values[0].second) agree = false;
    Verdict v;
    v.name = "cross-check";
    v.status = agree ? "pass" : "fail";
    v.reason = agree ? "all methods agree" : "methods disagree: " + counts.dump();
    report.verdicts.push_back(v);
  }
  report.seconds = now_seconds() - t0;
  return report;
}

RunReport run_sweep(const CampaignConfig& config, SweepTable* table_out) {
  double t0 = now_seconds();
  RunReport report = make_report("sweep");
  std::vector<uint64_t> ns = config.schedule.materialize();
  report.inputs = {{"template", config.tmpl},
                   {"n_values", ns},
                   {"budgets", budgets_json(config.budgets)},
                   {"parallel", config.parallel}};

  SweepOptions opts;
  opts.methods = config.methods;
  opts.budgets = config.budgets;
  opts.parallel = config.parallel;
  SweepTable table = count_sweep(config.tmpl, ns, opts);

  report.results["records"] = table.records.size();
  report.results["failures"] = table.failures.size();
  nlohmann::json tj;
  to_json(tj, table);
  report.results["table"] = tj;

  if (config.methods.size() > 1) {
    // count_sweep would have thrown on any disagreement.
    report.verdicts.push_back({"cross-check", "pass", "all methods agree"});
  }
  if (config.fit) {
    try {
      SlopeFit fit = empirical_slope(table, config.fit_summatory);
      report.results["fit"] = {{"slope", fit.slope},
                               {"intercept", fit.intercept},
                               {"residual", fit.residual},
                               {"points", fit.points},
                               {"summatory", config.fit_summatory}};
    } catch (const std::invalid_argument& e) {
      report.verdicts.push_back({"slope-fit", "skipped", e.what()});
    }
  }
  if (table_out) *table_out = std::move(table);
  report.seconds = now_seconds() - t0;
  return report;
}

RunReport run_hua(uint32_t k, uint32_t j, const std::vector<uint64_t>& N_values,
                  const Budgets& budgets) {
  double t0 = now_seconds();
  if (j < 1 || j > k)
    throw std::invalid_argument("hua: the moment lemma's range is 1 <= j <= k");
  if (N_values.empty()) throw std::invalid_argument("hua: no N values");

  RunReport report = make_report("hua");
  report.inputs = {{"k", k}, {"j", j}, {"N_values", N_values},
                   {"budgets", budgets_json(budgets)}};

  std::vector<MomentRecord> records;
  double worst = 0.0;
  bool match = true;
  for (uint64_t N : N_values) {
    MomentRecord rec = hua_moment_record(N, k, j, budgets);
    double tol = 1e-6 * static_cast<double>(rec.samples);
    double gap = std::fabs(rec.quadrature - rec.combinatorial.get_d());
    worst = std::max(worst, gap);
    if (gap > tol) match = false;
    records.push_back(std::move(rec));
  }

  nlohmann::json rj = nlohmann::json::array();
  for (const auto& r : records)
    rj.push_back({{"N", r.N},
                  {"k", r.k},
                  {"j", r.j},
                  {"combinatorial", r.combinatorial.get_str()},
                  {"quadrature", r.quadrature},
                  {"samples", r.samples}});
  report.results["moments"] = rj;

  {
    char reason[96];
    std::snprintf(reason, sizeof(reason), "max |quadrature - combinatorial| = %.3g",
                  worst);
    report.verdicts.push_back(
        {"quadrature-vs-combinatorial", match ? "pass" : "fail", reason});
  }

  const double bound = static_cast<double>(1ull << j) - static_cast<double>(j) + 0.2;
  if (N_values.size() >= 4) {
    std::vector<double> xs, ys;
    for (const auto& r : records) {
      xs.push_back(std::log(static_cast<double>(r.N)));
      ys.push_back(log_big(r.combinatorial));
    }
    SlopeFit fit = fit_linear(xs, ys);
    report.results["fit"] = {{"slope", fit.slope},
                             {"intercept", fit.intercept},
                             {"residual", fit.residual},
                             {"points", fit.points},
                             {"bound", bound}};
    char reason[96];
    std::snprintf(reason, sizeof(reason), "slope %.4f vs bound %.4f", fit.slope, bound);
    report.verdicts.push_back(
        {"slope-within-bound", fit.slope <= bound ? "pass" : "fail", reason});
  } else {
    report.verdicts.push_back(
        {"slope-within-bound", "skipped", "needs at least 4 N values"});
  }
  report.seconds = now_seconds() - t0;
  return report;
}

RunReport run_exponents(const std::vector<uint32_t>& ks) {
  double t0 = now_seconds();
  if (ks.empty()) throw std::invalid_argument("exponents: empty ks");
  RunReport report = make_report("exponents");
  report.inputs = {{"ks", ks}};

  std::vector<uint32_t> sorted = ks;
  std::sort(sorted.begin(), sorted.end(), std::greater<uint32_t>());

  report.results["eq42"] = exponent_to_json(ExponentBound{
      preliminary_exponent(sorted), sorted.size(), {}, ExponentFormula::Preliminary});

  if (sorted.size() >= 2) {
    ComparisonReport cmp = exponent_comparison(sorted);
    report.results["eq45"] = exponent_to_json(exponent_mixed_powers(sorted));
    report.results["gap"] = comparison_to_json(cmp)["gap"];
    Verdict validity{"validity", cmp.validity.ok ? "pass" : "fail", ""};
    for (const auto& note : cmp.validity.notes) {
      if (!validity.reason.empty()) validity.reason += "; ";
      validity.reason += note;
    }
    report.verdicts.push_back(validity);
    if (cmp.validity.ok) {
      bool positive = cmp.gap > 0;
      report.verdicts.push_back({"gap-positive", positive ? "pass" : "fail",
                                 "gap = " + rational_str(cmp.gap)});
    } else {
      report.verdicts.push_back({"gap-positive", "skipped", "validity failed"});
    }
  }

  bool all_equal = true;
  for (uint32_t k : sorted) all_equal &= k == sorted.front();
  if (all_equal && sorted.size() >= 2) {
    ExponentBound eq = exponent_equal_powers(sorted.size(), sorted.front());
    report.results["eq33"] = exponent_to_json(eq);
  }
  report.seconds = now_seconds() - t0;
  return report;
}

RunReport run_gamma_check() {
  double t0 = now_seconds();
  RunReport report = make_report("gamma-check");
  report.inputs = {{"grid", "x = 0.1 .. 30.0 step 0.1"}};

  double worst_functional = 0.0;
  for (int i = 1; i <= 300; ++i) {
    double x = i / 10.0;
    double lhs = gamma_fn(x + 1.0);
    double rel = std::fabs(lhs - x * gamma_fn(x)) / lhs;
    worst_functional = std::max(worst_functional, rel);
  }
  double worst_factorial = 0.0;
  double fact = 1.0;
  for (int n = 1; n <= 15; ++n) {
    if (n > 1) fact *= n - 1;
    worst_factorial =
        std::max(worst_factorial, std::fabs(gamma_fn(n) - fact) / fact);
  }
  double half = std::fabs(gamma_fn(0.5) - std::sqrt(M_PI)) / std::sqrt(M_PI);
  double ratio = std::fabs(gamma_fn(1.5) / gamma_fn(2.5) - 2.0 / 3.0);

  report.results = {{"max_functional_equation_error", worst_functional},
                    {"max_factorial_error", worst_factorial},
                    {"gamma_half_error", half},
                    {"ratio_3_2_over_5_2_error", ratio}};

  auto verdict = [&](const char* name, double err, double tol) {
    char reason[64];
    std::snprintf(reason, sizeof(reason), "error %.3g (tolerance %.1g)", err, tol);
    report.verdicts.push_back({name, err <= tol ? "pass" : "fail", reason});
  };
  verdict("functional-equation", worst_functional, 1e-10);
  verdict("factorials", worst_factorial, 1e-10);
  verdict("gamma-half", half, 1e-10);
  verdict("ratio-two-thirds", ratio, 1e-10);
  report.seconds = now_seconds() - t0;
  return report;
}

RunReport run_report(const nlohmann::json& sweep_json, bool summatory) {
  double t0 = now_seconds();
  RunReport report = make_report("report");
  SweepTable table = sweep_from_json(sweep_json);
  report.inputs = {{"template", table.tmpl},
                   {"records", table.records.size()},
                   {"summatory", summatory}};
  SlopeFit fit = empirical_slope(table, summatory);
  report.results["fit"] = {{"slope", fit.slope},
                           {"intercept", fit.intercept},
                           {"residual", fit.residual},
                           {"points", fit.points},
                           {"summatory", summatory}};
  report.seconds = now_seconds() - t0;
  return report;
}

}  // namespace diocount
