#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "irscep/config.hpp"
#include "irscep/linalg.hpp"

namespace irscep {

/// Minimization problem over length-n sequences from a complex alphabet whose
/// objective is a sum of sequential terms: term(k, prefix) may read every
/// variable up to and including index k (0-based).
struct TrellisSpec {
  std::size_t n = 0;
  std::size_t alphabet_size = 0;
  std::size_t memory = 0;
  std::vector<cplx> alphabet;
  std::function<double(std::size_t, std::span<const cplx>)> term;
};

struct TrellisResult {
  std::vector<int> assignment;
  double objective = 0.0;
  std::uint64_t comparisons = 0;
};

/// Survivor-path search with A^memory states. A state is identified by its
/// last `memory` labels, but each survivor carries its full path so that the
/// term callback can read the whole prefix. Among branches entering a state
/// only the minimum cumulative benchmark survives; benchmark ties resolve to
/// the lexicographically smallest full path, which makes results reproducible
/// and, at memory == n, identical to exhaustive_minimize.
/// Guard: alphabet_size^memory <= 2^20.
TrellisResult trellis_minimize(const TrellisSpec& spec);

/// Depth-first enumeration of all alphabet_size^n assignments; ties resolve
/// to the lexicographically smallest assignment. Guard: alphabet_size^n <= 2^24.
TrellisResult exhaustive_minimize(const TrellisSpec& spec);

/// Closed-form benchmark-comparison count of one full joint transmit/IRS
/// survivor-path pass: (N_T - T) N_BS^{T+1} + (M - B) N_IRS^{B+1}.
std::uint64_t comparison_count(const SystemConfig& cfg);

}  // namespace irscep
