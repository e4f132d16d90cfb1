#include "irscep/config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace irscep {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field '" + field + "': " + why);
}

}  // namespace

double BetaSpec::beta_bu(int l, int j, int i, int cells, int users) const {
  if (!bu.empty()) return bu[(static_cast<std::size_t>(l) * cells + j) * users + i];
  return (l == j) ? intra_cell : inter_cell;
}

double BetaSpec::beta_bi(int l) const {
  if (!bi.empty()) return bi[static_cast<std::size_t>(l)];
  return bs_irs;
}

double BetaSpec::beta_iu(int j, int i, int users) const {
  if (!iu.empty()) return iu[static_cast<std::size_t>(j) * users + i];
  return irs_user;
}

void SystemConfig::validate() const {
  if (cells < 1) fail("L", "must be >= 1");
  if (users_per_cell < 1) fail("K", "must be >= 1");
  if (bs_antennas < 1) fail("N_T", "must be >= 1");
  if (irs_elements < 0) fail("M", "must be >= 0");
  if (bs_alphabet < 2) fail("N_BS", "must be >= 2");
  if (irs_alphabet < 2) fail("N_IRS", "must be >= 2");
  if (bs_memory < 1 || bs_memory > bs_antennas) fail("T", "must satisfy 1 <= T <= N_T");
  const int irs_cap = irs_elements > 0 ? irs_elements : 1;
  if (irs_memory < 1 || irs_memory > irs_cap) fail("B", "must satisfy 1 <= B <= max(M,1)");
  if (!(total_power > 0.0)) fail("P_T", "must be > 0");
  if (!(noise_power > 0.0)) fail("sigma_w2", "must be > 0");
  if (mc_trials < 1) fail("mc_trials", "must be >= 1");

  const auto check_nonneg = [](const std::vector<double>& v, const char* name) {
    for (double x : v)
      if (!(x >= 0.0)) fail(name, "entries must be >= 0");
  };
  check_nonneg(beta.bu, "beta.bu");
  check_nonneg(beta.bi, "beta.bi");
  check_nonneg(beta.iu, "beta.iu");
  const std::size_t want_bu = static_cast<std::size_t>(cells) * cells * users_per_cell;
  if (!beta.bu.empty() && beta.bu.size() != want_bu) fail("beta.bu", "size must be L*L*K");
  if (!beta.bi.empty() && beta.bi.size() != static_cast<std::size_t>(cells))
    fail("beta.bi", "size must be L");
  if (!beta.iu.empty() &&
      beta.iu.size() != static_cast<std::size_t>(cells) * users_per_cell)
    fail("beta.iu", "size must be L*K");
  if (!(beta.intra_cell >= 0.0)) fail("beta.intra_cell", "must be >= 0");
  if (!(beta.inter_cell >= 0.0)) fail("beta.inter_cell", "must be >= 0");
  if (!(beta.bs_irs >= 0.0)) fail("beta.bs_irs", "must be >= 0");
  if (!(beta.irs_user >= 0.0)) fail("beta.irs_user", "must be >= 0");
}

double SystemConfig::amplitude() const {
  const double ratio = total_power / static_cast<double>(bs_antennas);
  return amplitude_mode == AmplitudeMode::kPowerRatio ? ratio : std::sqrt(ratio);
}

const char* to_string(AmplitudeMode m) {
  return m == AmplitudeMode::kPowerRatio ? "power-ratio" : "power-normalized";
}

AmplitudeMode amplitude_mode_from_string(const std::string& s) {
  if (s == "power-ratio") return AmplitudeMode::kPowerRatio;
  if (s == "power-normalized") return AmplitudeMode::kPowerNormalized;
  throw std::invalid_argument("config field 'amplitude_mode': unknown value '" + s +
                              "' (expected power-ratio or power-normalized)");
}

}  // namespace irscep
