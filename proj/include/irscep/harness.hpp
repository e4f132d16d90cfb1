#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irscep/scenario.hpp"

namespace irscep {

/// One CSV row: a (sweep point, trial, scheme) cell of the run.
struct ResultRow {
  int trial = 0;
  std::uint64_t seed = 0;  // the scheme-private stream key of this trial
  std::string scheme;
  int cells = 0;
  int users = 0;
  int bs_antennas = 0;
  int irs_elements = 0;
  int bs_alphabet = 0;
  int irs_alphabet = 0;
  double avg_rate_per_cell = 0.0;
  double mui_power_total = 0.0;
  std::uint64_t comparisons = 0;
  double elapsed_ms = 0.0;
};

/// Runs every (sweep point, trial, scheme) cell in deterministic order:
/// sweep points as declared, trials ascending, schemes as declared. All
/// fields except elapsed_ms reproduce bit-for-bit under a fixed seed.
std::vector<ResultRow> run_scenario(const Scenario& sc);

/// CSV with the exact ResultRow header, floats at 12 significant digits,
/// linefeed-terminated lines.
std::string rows_to_csv(const std::vector<ResultRow>& rows);

/// run_scenario + CSV emission. Throws on unwritable paths.
void simulate_to_csv(const Scenario& sc, const std::string& out_path);

}  // namespace irscep
