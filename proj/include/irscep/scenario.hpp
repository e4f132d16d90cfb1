#pragma once

#include <string>
#include <vector>

#include "irscep/config.hpp"
#include "irscep/schemes.hpp"

namespace irscep {

enum class SweepParam { kNone, kIrsElements, kUsers, kBsAntennas };

const char* to_string(SweepParam p);
SweepParam sweep_param_from_string(const std::string& s);

/// Parsed scenario: a validated system configuration, the scheme list in
/// declared order, and an optional sweep axis.
struct Scenario {
  SystemConfig config;
  std::vector<SchemeSpec> schemes;
  SweepParam sweep = SweepParam::kNone;
  std::vector<int> sweep_values;
  std::string output;  // default CSV path, may be empty

  /// Config for one sweep point (validated).
  SystemConfig at_sweep_point(int value) const;
};

/// Strict JSON scenario parsing: unknown keys anywhere are rejected, missing
/// required keys are reported by name. Throws std::invalid_argument with a
/// field-level diagnostic.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

}  // namespace irscep
