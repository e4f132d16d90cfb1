#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irscep/channel.hpp"
#include "irscep/config.hpp"
#include "irscep/model.hpp"
#include "irscep/rng.hpp"
#include "irscep/sdr.hpp"

namespace irscep {

enum class SchemeKind {
  kTrellisMain,
  kTrellisLowOverhead,
  kSdrDiscrete,
  kSdrContinuous,
  kNoIrs,
  kRandomPhase,
};

const char* to_string(SchemeKind k);
SchemeKind scheme_kind_from_string(const std::string& s);

struct SchemeSpec {
  SchemeKind kind = SchemeKind::kTrellisMain;
  int rounds = 1;             // transmit/IRS alternation count for trellis kinds
  int rounding_draws = 100;   // randomized rounding repetitions for SDR kinds
  double sdp_tol = 1e-6;      // rate runs need far less than the solver default
  int sdp_max_iter = 50000;
  double rank1_threshold = 1e-6;

  void validate() const;
};

/// Outcome of one scheme on one trial. MUI quantities are always re-evaluated
/// from the returned decision variables on the true channels.
struct TrialReport {
  SchemeKind kind = SchemeKind::kTrellisMain;
  std::vector<cplx> mui_vectors;       // per user, (j * K) + i
  double mui_power_total = 0.0;
  std::vector<double> user_rates;
  double per_user_rate = 0.0;  // mean over users
  double per_cell_rate = 0.0;  // mean over cells of the cell sum rate
  std::uint64_t comparisons = 0;
  std::uint64_t overhead_saved = 0;  // inter-cell coefficients not exchanged
  std::vector<std::vector<cplx>> x_values;  // one transmit vector per cell
  std::vector<cplx> psi_values;             // empty when the IRS is unused

  /// Coarse scheme family label (both SDR kinds map to "sdr").
  const char* tag() const;
};

/// Runs one scheme on one trial's channels and symbols. `rng` is the
/// scheme-private stream for this trial; channels and symbols come from their
/// own streams so paired comparisons across schemes share realizations.
TrialReport run_scheme(const ChannelSet& ch, const SymbolMatrix& sym,
                       const SystemConfig& cfg, const SchemeSpec& scheme, Rng& rng);

/// Alternating transmit/IRS survivor-path design for a one-cell system.
TrialReport run_single_cell(const ChannelSet& ch, const SymbolMatrix& sym,
                            const SystemConfig& cfg, const SchemeSpec& scheme,
                            Rng& rng);

/// Full-CSI multi-cell design: per-cell transmit passes on own-cell channels,
/// then one IRS pass on the global objective.
TrialReport run_multicell_main(const ChannelSet& ch, const SymbolMatrix& sym,
                               const SystemConfig& cfg, const SchemeSpec& scheme,
                               Rng& rng);

/// Reduced-CSI multi-cell design: per-cell transmit passes on the stochastic
/// objective, IRS pass on the own-cell-coupling objective.
TrialReport run_multicell_low_overhead(const ChannelSet& ch, const SymbolMatrix& sym,
                                       const SystemConfig& cfg,
                                       const SchemeSpec& scheme, Rng& rng);

/// Relax-and-round benchmark: per-cell SDR transmit design with the IRS at
/// its initial phases, then one SDR IRS pass.
TrialReport run_multicell_sdr(const ChannelSet& ch, const SymbolMatrix& sym,
                              const SystemConfig& cfg, const SchemeSpec& scheme,
                              Rng& rng);

}  // namespace irscep
