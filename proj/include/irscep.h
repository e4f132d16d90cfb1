/*
 * C API of the irscep simulator core. All entry points return a status code:
 * IRSCEP_OK on success, IRSCEP_FAIL when a validation run found failures,
 * IRSCEP_CONFIG_ERROR for bad configuration, paths, arguments or any other
 * error raised while running. On any non-OK return irscep_last_error()
 * carries a description (thread-local).
 */
#ifndef IRSCEP_H
#define IRSCEP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  IRSCEP_OK = 0,
  IRSCEP_FAIL = 1,
  IRSCEP_CONFIG_ERROR = 2,
};

typedef struct irscep_scenario irscep_scenario;

const char* irscep_version(void);
const char* irscep_last_error(void);

/* Scenario lifecycle. On success *out owns the parsed, validated scenario. */
int irscep_scenario_open(const char* path, irscep_scenario** out);
int irscep_scenario_from_string(const char* json_text, irscep_scenario** out);
void irscep_scenario_close(irscep_scenario* sc);

/* Overrides applied after parsing; each re-validates the scenario. */
int irscep_scenario_set_seed(irscep_scenario* sc, uint64_t seed);
int irscep_scenario_set_trials(irscep_scenario* sc, uint32_t trials);
/* param is one of "M", "K", "NT"; pass count == 0 to clear the sweep. */
int irscep_scenario_set_sweep(irscep_scenario* sc, const char* param,
                              const int* values, size_t count);

/* Runs every (sweep point, trial, scheme) cell and writes the CSV. Passing a
 * NULL/empty path falls back to the scenario's own output entry. */
int irscep_simulate(const irscep_scenario* sc, const char* csv_out_path);

typedef struct irscep_complexity_case {
  int n_t;
  int m;
  int t;
  int b;
  int n_bs;
  int n_irs;
} irscep_complexity_case;

typedef struct irscep_complexity_counts {
  double trellis;
  double sdr;
  double exhaustive;
} irscep_complexity_counts;

int irscep_complexity(const irscep_complexity_case* c, irscep_complexity_counts* out);

/* Runs the self-validation suite. Returns IRSCEP_OK when every check passes,
 * IRSCEP_FAIL otherwise; the per-check report is copied into `report`
 * (truncated to report_len, always NUL-terminated when report_len > 0). */
int irscep_validate(uint64_t seed, char* report, size_t report_len);

#ifdef __cplusplus
}
#endif

#endif /* IRSCEP_H */
