// diocount — exact solution counting for c_1*x_1^k_1 + ... + c_s*x_s^k_s = n
// and empirical validation of the growth exponents those counts obey.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diocount/cli.hpp"
#include "diocount/errors.hpp"
#include "diocount/version.hpp"

using namespace diocount;

namespace {

std::vector<CountMethod> methods_from_csv(const std::string& csv) {
  std::vector<CountMethod> methods;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    auto m = parse_method(cur);
    if (!m) throw ConfigError("unknown method \"" + cur + "\"");
    methods.push_back(*m);
    cur.clear();
  };
  for (char c : csv) {
    if (c == ',') flush();
    else if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
  }
  flush();
  if (methods.empty()) throw ConfigError("no methods given");
  return methods;
}

SolutionDomain domain_from_flag(const std::string& word) {
  auto d = parse_domain(word);
  if (!d) throw ConfigError("unknown domain \"" + word + "\"");
  return *d;
}

// Single writer for all command output.
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write to \"" + out_path + "\"");
  out << text;
}

int finish(const RunReport& report, const std::string& format,
           const std::string& out_path, const std::string& table_text = "") {
  if (format == "json") {
    emit(report.to_json().dump(2) + "\n", out_path);
  } else if (format == "csv" && !table_text.empty()) {
    emit(table_text, out_path);
    if (!out_path.empty()) std::cout << report.to_text();
  } else {
    emit(report.to_text(), out_path);
  }
  return report.ok() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solution counting and growth-exponent checks for Diophantine "
               "equations c1*x1^k1 + ... + cs*xs^ks = n"};
  app.set_version_flag("--version", std::string("diocount ") + DIOCOUNT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();  // let global flags appear after the subcommand name

  // Global knobs.
  Budgets budgets;
  unsigned parallel = 1;
  std::string out_path;
  std::string format = "text";
  app.add_option("--budget-nodes", budgets.max_nodes, "search-node budget")
      ->capture_default_str();
  app.add_option("--budget-mem", budgets.max_memory_bytes,
                 "memory budget in bytes (suffixes KiB/MiB/GiB accepted)")
      ->transform(CLI::AsSizeValue(false))
      ->capture_default_str();
  app.add_option("--budget-samples", budgets.max_samples, "quadrature sample budget")
      ->capture_default_str();
  app.add_option("--parallel", parallel, "worker threads")->capture_default_str();
  app.add_option("--out", out_path, "write output to this file instead of stdout");
  auto* format_opt = app.add_option("--format", format, "output format")
                         ->check(CLI::IsMember({"text", "json", "csv"}));

  // count
  auto* cmd_count = app.add_subcommand("count", "count solutions of one equation");
  std::string count_equation;
  std::string count_domain = "positive";
  std::string count_methods = "dp";
  uint64_t samples_override = 0;
  cmd_count->add_option("equation", count_equation,
                        "equation: \"3x^1 + 2x^1 = 5\", \"[[3,1],[2,1]] ; 5 ; positive\","
                        " or JSON");
  cmd_count->add_option("--domain", count_domain,
                        "domain when the equation text does not name one");
  cmd_count->add_option("--method", count_methods, "comma list of brute,dp,fourier");
  cmd_count->add_option("--samples-override", samples_override,
                        "fourier sample count override (0 = exact default)");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "count over a schedule of n values");
  std::string sweep_config;
  std::string sweep_template;
  std::string sweep_domain = "positive";
  std::string sweep_methods = "dp";
  std::vector<uint64_t> sweep_values;
  uint64_t sweep_from = 0, sweep_to = 0, sweep_ratio = 0, sweep_step = 0;
  bool sweep_fit = false, sweep_fit_raw = false;
  cmd_sweep->add_option("--config", sweep_config, "campaign config JSON file");
  cmd_sweep->add_option("--template", sweep_template,
                        "equation template, e.g. \"x^2 + x^2\"");
  cmd_sweep->add_option("--domain", sweep_domain, "template domain fallback");
  cmd_sweep->add_option("--method", sweep_methods, "comma list of brute,dp,fourier");
  cmd_sweep->add_option("--values", sweep_values, "explicit n values");
  cmd_sweep->add_option("--from", sweep_from, "schedule start");
  cmd_sweep->add_option("--to", sweep_to, "schedule end");
  cmd_sweep->add_option("--ratio", sweep_ratio, "geometric ratio (default 2)");
  cmd_sweep->add_option("--step", sweep_step, "arithmetic step (dense sweep)");
  cmd_sweep->add_flag("--fit", sweep_fit, "append summatory slope fit");
  cmd_sweep->add_flag("--fit-raw", sweep_fit_raw, "fit raw counts instead");

  // hua
  auto* cmd_hua = app.add_subcommand("hua", "moment records and slope for f(x)");
  uint32_t hua_k = 2, hua_j = 1;
  std::vector<uint64_t> hua_values;
  uint64_t hua_from = 0, hua_to = 0, hua_ratio = 2;
  cmd_hua->add_option("--k", hua_k, "power k")->required();
  cmd_hua->add_option("--j", hua_j, "moment index j (1 <= j <= k)")->required();
  cmd_hua->add_option("--n-values", hua_values, "explicit N values");
  cmd_hua->add_option("--n-from", hua_from, "geometric N start");
  cmd_hua->add_option("--n-to", hua_to, "geometric N end");
  cmd_hua->add_option("--n-ratio", hua_ratio, "geometric N ratio");

  // exponents
  auto* cmd_exp = app.add_subcommand("exponents", "exponent bounds for given ks");
  std::vector<uint32_t> exp_ks;
  cmd_exp->add_option("--ks", exp_ks, "term exponents, e.g. --ks 3 2")->required();

  // gamma-check
  app.add_subcommand("gamma-check", "verify the gamma evaluation");

  // report
  auto* cmd_report = app.add_subcommand("report", "slope fit over an emitted sweep");
  std::string report_sweep;
  bool report_raw = false;
  cmd_report->add_option("--sweep", report_sweep, "sweep JSON file")->required();
  cmd_report->add_flag("--raw", report_raw, "fit raw counts, not cumulative sums");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("count")) {
      RunReport report = run_count(count_equation, domain_from_flag(count_domain),
                                   methods_from_csv(count_methods), budgets,
                                   samples_override, parallel);
      return finish(report, format, out_path);
    }

    if (app.got_subcommand("sweep")) {
      CampaignConfig config;
      if (!sweep_config.empty()) {
        config = load_config(sweep_config);
      } else {
        if (sweep_template.empty())
          throw ConfigError("sweep needs --config or --template");
        config.tmpl = parse_template(sweep_template, domain_from_flag(sweep_domain));
        if (!sweep_values.empty()) {
          config.schedule.kind = Schedule::Kind::Values;
          config.schedule.values = sweep_values;
        } else if (sweep_step != 0) {
          config.schedule.kind = Schedule::Kind::Range;
          config.schedule.from = sweep_from ? sweep_from : 1;
          config.schedule.to = sweep_to;
          config.schedule.step = sweep_step;
        } else {
          config.schedule.kind = Schedule::Kind::Geometric;
          config.schedule.from = sweep_from ? sweep_from : 16;
          config.schedule.to = sweep_to;
          config.schedule.ratio = sweep_ratio ? sweep_ratio : 2;
        }
        config.methods = methods_from_csv(sweep_methods);
        config.budgets = budgets;
        config.parallel = parallel;
        config.fit = sweep_fit || sweep_fit_raw;
        config.fit_summatory = !sweep_fit_raw;
      }
      // Command-line --out/--format take precedence over the config file.
      if (!out_path.empty()) config.out = out_path;
      if (format_opt->count() > 0) config.format = format;

      SweepTable table;
      RunReport report = run_sweep(config, &table);
      if (config.format == "csv")
        return finish(report, "csv", config.out, sweep_to_csv(table));
      return finish(report, config.format, config.out);
    }

    if (app.got_subcommand("hua")) {
      std::vector<uint64_t> ns = hua_values;
      if (ns.empty()) {
        if (hua_to == 0) throw ConfigError("hua needs --n-values or --n-from/--n-to");
        Schedule sched;
        sched.kind = Schedule::Kind::Geometric;
        sched.from = hua_from ? hua_from : 16;
        sched.to = hua_to;
        sched.ratio = hua_ratio ? hua_ratio : 2;
        ns = sched.materialize();
      }
      RunReport report = run_hua(hua_k, hua_j, ns, budgets);
      if (format == "csv") {
        std::vector<MomentRecord> records;
        for (const auto& r : report.results["moments"]) {
          MomentRecord rec;
          rec.N = r.at("N").get<uint64_t>();
          rec.k = r.at("k").get<uint32_t>();
          rec.j = r.at("j").get<uint32_t>();
          rec.combinatorial = BigInt(r.at("combinatorial").get<std::string>());
          rec.quadrature = r.at("quadrature").get<double>();
          rec.samples = r.at("samples").get<uint64_t>();
          records.push_back(std::move(rec));
        }
        return finish(report, "csv", out_path, moments_to_csv(records));
      }
      return finish(report, format, out_path);
    }

    if (app.got_subcommand("exponents")) {
      RunReport report = run_exponents(exp_ks);
      if (format == "csv") {
        std::vector<uint32_t> sorted = exp_ks;
        std::sort(sorted.begin(), sorted.end(), std::greater<uint32_t>());
        std::string csv = sorted.size() >= 2
                              ? comparisons_to_csv({exponent_comparison(sorted)})
                              : std::string("ks,eq42,eq45,gap\n");
        return finish(report, "csv", out_path, csv);
      }
      return finish(report, format, out_path);
    }

    if (app.got_subcommand("gamma-check"))
      return finish(run_gamma_check(), format, out_path);

    if (app.got_subcommand("report")) {
      std::ifstream in(report_sweep);
      if (!in) throw ConfigError("cannot read sweep file \"" + report_sweep + "\"");
      nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
      if (j.is_discarded())
        throw ConfigError("sweep file \"" + report_sweep + "\" is not valid JSON");
      return finish(run_report(j, !report_raw), format, out_path);
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return 3;
  } catch (const CrossCheckError& e) {
    std::cerr << "cross-check failure: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
