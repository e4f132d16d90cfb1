#include "irscep.h"

#include <cstring>
#include <string>

#include "irscep/complexity.hpp"
#include "irscep/harness.hpp"
#include "irscep/scenario.hpp"
#include "irscep/validate.hpp"

struct irscep_scenario {
  irscep::Scenario sc;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return IRSCEP_CONFIG_ERROR;
  } catch (const std::exception& e) {
    set_error(e.what());
    return IRSCEP_CONFIG_ERROR;
  } catch (...) {
    set_error("unknown error");
    return IRSCEP_CONFIG_ERROR;
  }
}

}  // namespace

extern "C" {

const char* irscep_version(void) { return "0.1.0"; }

const char* irscep_last_error(void) { return g_last_error.c_str(); }

int irscep_scenario_open(const char* path, irscep_scenario** out) {
  if (!path || !out) {
    set_error("irscep_scenario_open: null argument");
    return IRSCEP_CONFIG_ERROR;
  }
  return guarded([&] {
    auto* handle = new irscep_scenario{irscep::load_scenario(path)};
    *out = handle;
    return IRSCEP_OK;
  });
}

int irscep_scenario_from_string(const char* json_text, irscep_scenario** out) {
  if (!json_text || !out) {
    set_error("irscep_scenario_from_string: null argument");
    return IRSCEP_CONFIG_ERROR;
  }
  return guarded([&] {
    auto* handle = new irscep_scenario{irscep::parse_scenario(json_text)};
    *out = handle;
    return IRSCEP_OK;
  });
}

void irscep_scenario_close(irscep_scenario* sc) { delete sc; }

int irscep_scenario_set_seed(irscep_scenario* sc, uint64_t seed) {
  if (!sc) {
    set_error("irscep_scenario_set_seed: null scenario");
    return IRSCEP_CONFIG_ERROR;
  }
  sc->sc.config.seed = seed;
  return IRSCEP_OK;
}

int irscep_scenario_set_trials(irscep_scenario* sc, uint32_t trials) {
  if (!sc) {
    set_error("irscep_scenario_set_trials: null scenario");
    return IRSCEP_CONFIG_ERROR;
  }
  return guarded([&] {
    irscep::SystemConfig cfg = sc->sc.config;
    cfg.mc_trials = static_cast<int>(trials);
    cfg.validate();
    sc->sc.config = cfg;
    return IRSCEP_OK;
  });
}

int irscep_scenario_set_sweep(irscep_scenario* sc, const char* param, const int* values,
                              size_t count) {
  if (!sc || (count > 0 && (!param || !values))) {
    set_error("irscep_scenario_set_sweep: null argument");
    return IRSCEP_CONFIG_ERROR;
  }
  return guarded([&] {
    if (count == 0) {
      sc->sc.sweep = irscep::SweepParam::kNone;
      sc->sc.sweep_values.clear();
      return IRSCEP_OK;
    }
    irscep::Scenario next = sc->sc;
    next.sweep = irscep::sweep_param_from_string(param);
    next.sweep_values.assign(values, values + count);
    for (int v : next.sweep_values) next.at_sweep_point(v);
    sc->sc = std::move(next);
    return IRSCEP_OK;
  });
}

int irscep_simulate(const irscep_scenario* sc, const char* csv_out_path) {
  if (!sc) {
    set_error("irscep_simulate: null scenario");
    return IRSCEP_CONFIG_ERROR;
  }
  return guarded([&] {
    const std::string path =
        (csv_out_path && *csv_out_path) ? csv_out_path : sc->sc.output;
    irscep::simulate_to_csv(sc->sc, path);
    return IRSCEP_OK;
  });
}

int irscep_complexity(const irscep_complexity_case* c, irscep_complexity_counts* out) {
  if (!c || !out) {
    set_error("irscep_complexity: null argument");
    return IRSCEP_CONFIG_ERROR;
  }
  return guarded([&] {
    irscep::ComplexityCase cc;
    cc.bs_antennas = c->n_t;
    cc.irs_elements = c->m;
    cc.bs_memory = c->t;
    cc.irs_memory = c->b;
    cc.bs_alphabet = c->n_bs;
    cc.irs_alphabet = c->n_irs;
    const irscep::ComplexityCounts counts = irscep::complexity_counts(cc);
    out->trellis = counts.trellis;
    out->sdr = counts.sdr;
    out->exhaustive = counts.exhaustive;
    return IRSCEP_OK;
  });
}

int irscep_validate(uint64_t seed, char* report, size_t report_len) {
  std::string text;
  bool pass = false;
  const int rc = guarded([&] {
    pass = irscep::run_validation(seed, text);
    return IRSCEP_OK;
  });
  if (report && report_len > 0) {
    const size_t n = std::min(report_len - 1, text.size());
    std::memcpy(report, text.data(), n);
    report[n] = '\0';
  }
  if (rc != IRSCEP_OK) return rc;
  if (!pass) {
    set_error("validation suite reported failures");
    return IRSCEP_FAIL;
  }
  return IRSCEP_OK;
}

}  // extern "C"
