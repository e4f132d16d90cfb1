#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "irscep/objectives.hpp"

namespace irscep {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Optional perturbation applied to every sequential objective before the
/// expansion checks. Exists so the suite itself can be tested: a deliberate
/// term mutation must be caught.
using ObjectiveMutator = std::function<void(SeqQuadObjective&)>;

/// Sequential-term sums vs direct MUI-power evaluation on assignment
/// differences, every objective family, random desk-scale instances.
CheckResult check_expansion_consistency(std::uint64_t seed, int instances_per_family,
                                        double tol,
                                        const ObjectiveMutator& mutate = {});

/// Full-memory survivor search must equal exhaustive search exactly; at
/// reduced memory it must never beat it.
CheckResult check_trellis_vs_exhaustive(std::uint64_t seed, int instances);

/// SDP bound <= exhaustive discrete optimum <= rounded objective on random
/// augmented quadratic forms.
CheckResult check_sdp_sandwich(std::uint64_t seed, int instances, double sdp_tol);

/// Identical (config, trial) inputs reproduce channels, reports and CSV
/// byte-for-byte (elapsed time excluded).
CheckResult check_determinism(std::uint64_t seed);

/// Phase quantizer vs nearest-alphabet-point scan with upper-bin ties.
CheckResult check_quantizer(int angles_per_alphabet);

/// Runs the whole suite at desk scale; prints one line per check to `out`.
/// Returns true when every check passes.
bool run_validation(std::uint64_t seed, std::string& out);

}  // namespace irscep
