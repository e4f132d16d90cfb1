// Command-line front end; talks to the core exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irscep.h"

namespace {

int fail_with(int rc) {
  std::fprintf(stderr, "error: %s\n", irscep_last_error());
  return rc;
}

struct ScenarioGuard {
  irscep_scenario* sc = nullptr;
  ~ScenarioGuard() { irscep_scenario_close(sc); }
};

int cmd_simulate(const std::string& config, const std::string& out, bool has_seed,
                 std::uint64_t seed, int trials) {
  ScenarioGuard g;
  int rc = irscep_scenario_open(config.c_str(), &g.sc);
  if (rc != IRSCEP_OK) return fail_with(rc);
  if (has_seed && (rc = irscep_scenario_set_seed(g.sc, seed)) != IRSCEP_OK)
    return fail_with(rc);
  if (trials > 0 &&
      (rc = irscep_scenario_set_trials(g.sc, static_cast<std::uint32_t>(trials))) !=
          IRSCEP_OK)
    return fail_with(rc);
  rc = irscep_simulate(g.sc, out.empty() ? nullptr : out.c_str());
  if (rc != IRSCEP_OK) return fail_with(rc);
  return IRSCEP_OK;
}

int cmd_sweep(const std::string& config, const std::string& out, const std::string& param,
              const std::vector<int>& values, bool has_seed, std::uint64_t seed,
              int trials) {
  ScenarioGuard g;
  int rc = irscep_scenario_open(config.c_str(), &g.sc);
  if (rc != IRSCEP_OK) return fail_with(rc);
  rc = irscep_scenario_set_sweep(g.sc, param.c_str(), values.data(), values.size());
  if (rc != IRSCEP_OK) return fail_with(rc);
  if (has_seed && (rc = irscep_scenario_set_seed(g.sc, seed)) != IRSCEP_OK)
    return fail_with(rc);
  if (trials > 0 &&
      (rc = irscep_scenario_set_trials(g.sc, static_cast<std::uint32_t>(trials))) !=
          IRSCEP_OK)
    return fail_with(rc);
  rc = irscep_simulate(g.sc, out.empty() ? nullptr : out.c_str());
  if (rc != IRSCEP_OK) return fail_with(rc);
  return IRSCEP_OK;
}

bool parse_case(const std::string& text, irscep_complexity_case& out) {
  // Format: NT=50,M=70,T=2,B=2,NBS=4,NIRS=4
  out = {50, 70, 2, 2, 4, 4};
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) return false;
    const std::string key = item.substr(0, eq);
    const int value = std::atoi(item.c_str() + eq + 1);
    if (key == "NT")
      out.n_t = value;
    else if (key == "M")
      out.m = value;
    else if (key == "T")
      out.t = value;
    else if (key == "B")
      out.b = value;
    else if (key == "NBS")
      out.n_bs = value;
    else if (key == "NIRS")
      out.n_irs = value;
    else
      return false;
    pos = end + 1;
  }
  return true;
}

int cmd_complexity(const std::vector<std::string>& case_specs) {
  std::vector<irscep_complexity_case> cases;
  if (case_specs.empty()) {
    cases.push_back({50, 70, 2, 2, 4, 4});
    cases.push_back({50, 70, 2, 2, 8, 8});
  } else {
    for (const std::string& spec : case_specs) {
      irscep_complexity_case c;
      if (!parse_case(spec, c)) {
        std::fprintf(stderr, "error: bad --case '%s'\n", spec.c_str());
        return IRSCEP_CONFIG_ERROR;
      }
      cases.push_back(c);
    }
  }
  std::printf("case  N_T   M  T  B  N_BS  N_IRS  trellis       sdr           exhaustive\n");
  int id = 1;
  for (const irscep_complexity_case& c : cases) {
    irscep_complexity_counts counts;
    const int rc = irscep_complexity(&c, &counts);
    if (rc != IRSCEP_OK) return fail_with(rc);
    std::printf("%-4d  %-4d %-3d %-2d %-2d %-5d %-6d %-13.0f %-13.6g %-.6g\n", id++, c.n_t,
                c.m, c.t, c.b, c.n_bs, c.n_irs, counts.trellis, counts.sdr,
                counts.exhaustive);
  }
  return IRSCEP_OK;
}

int cmd_validate(std::uint64_t seed) {
  std::vector<char> report(1 << 16);
  const int rc = irscep_validate(seed, report.data(), report.size());
  std::printf("%s", report.data());
  if (rc == IRSCEP_FAIL) std::printf("validation: FAIL\n");
  if (rc == IRSCEP_OK) std::printf("validation: pass\n");
  if (rc == IRSCEP_CONFIG_ERROR) return fail_with(rc);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-aided constant-envelope precoding simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, sweep_param;
  std::vector<int> sweep_values;
  std::vector<std::string> case_specs;
  std::uint64_t seed = 1;
  bool has_seed = false;
  int trials = 0;

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write CSV results");
  simulate->add_option("--config", config_path, "Scenario JSON path")->required();
  simulate->add_option("--out", out_path, "Output CSV path (overrides scenario setting)");
  simulate->add_option("--seed", seed, "Master seed override")->each([&](const std::string&) {
    has_seed = true;
  });
  simulate->add_option("--trials", trials, "Trial-count override");

  auto* sweep = app.add_subcommand("sweep", "Run a scenario over a parameter sweep");
  sweep->add_option("--config", config_path, "Scenario JSON path")->required();
  sweep->add_option("--param", sweep_param, "Sweep parameter: M, K or NT")->required();
  sweep->add_option("--values", sweep_values, "Sweep values")->required()->delimiter(',');
  sweep->add_option("--out", out_path, "Output CSV path (overrides scenario setting)");
  sweep->add_option("--seed", seed, "Master seed override")->each([&](const std::string&) {
    has_seed = true;
  });
  sweep->add_option("--trials", trials, "Trial-count override");

  auto* complexity = app.add_subcommand("complexity", "Print operation-count table");
  complexity->add_option("--case", case_specs,
                         "Case spec NT=..,M=..,T=..,B=..,NBS=..,NIRS=.. (repeatable)");

  auto* validate = app.add_subcommand("validate", "Run the self-validation suite");
  validate->add_option("--seed", seed, "Suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return IRSCEP_CONFIG_ERROR;
  }

  if (simulate->parsed()) return cmd_simulate(config_path, out_path, has_seed, seed, trials);
  if (sweep->parsed())
    return cmd_sweep(config_path, out_path, sweep_param, sweep_values, has_seed, seed,
                     trials);
  if (complexity->parsed()) return cmd_complexity(case_specs);
  if (validate->parsed()) return cmd_validate(seed);
  return IRSCEP_CONFIG_ERROR;
}
