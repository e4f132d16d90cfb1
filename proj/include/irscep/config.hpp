#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace irscep {

/// Per-antenna amplitude convention for the constant-envelope transmit vector.
/// kPowerRatio sets the amplitude itself to P_T / N_T; kPowerNormalized sets
/// the per-antenna power to P_T / N_T (amplitude sqrt(P_T / N_T)).
enum class AmplitudeMode { kPowerRatio, kPowerNormalized };

enum class PsiInit { kZeroPhase, kRandom };

/// Large-scale fading per link. Two-level mode assigns one gain to intra-cell
/// BS-user links and another to inter-cell ones; BS-IRS and IRS-user links
/// have their own levels. Explicit tables override the levels when non-empty.
struct BetaSpec {
  double intra_cell = 1.0;
  double inter_cell = 0.3;
  double bs_irs = 1.0;
  double irs_user = 1.0;
  std::vector<double> bu;  // (l * L + j) * K + i, explicit override
  std::vector<double> bi;  // l
  std::vector<double> iu;  // j * K + i

  double beta_bu(int l, int j, int i, int cells, int users) const;
  double beta_bi(int l) const;
  double beta_iu(int j, int i, int users) const;
};

struct SystemConfig {
  int cells = 1;           // L
  int users_per_cell = 1;  // K
  int bs_antennas = 1;     // N_T
  int irs_elements = 0;    // M
  int bs_alphabet = 4;     // N_BS
  int irs_alphabet = 4;    // N_IRS
  int bs_memory = 1;       // T
  int irs_memory = 1;      // B
  double total_power = 3.0;   // P_T, watts
  double noise_power = 1e-3;  // sigma_w^2, linear
  AmplitudeMode amplitude_mode = AmplitudeMode::kPowerRatio;
  PsiInit psi_init = PsiInit::kZeroPhase;
  bool irs_enabled = true;
  std::uint64_t seed = 1;
  int mc_trials = 100;
  BetaSpec beta;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Common modulus of the transmit-vector entries under amplitude_mode.
  double amplitude() const;
};

const char* to_string(AmplitudeMode m);
AmplitudeMode amplitude_mode_from_string(const std::string& s);

}  // namespace irscep
