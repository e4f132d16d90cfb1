#pragma once

#include <span>
#include <vector>

#include "irscep/channel.hpp"
#include "irscep/config.hpp"
#include "irscep/linalg.hpp"

namespace irscep {

/// Canonical point of the N-ary phase alphabet: amplitude * exp(j 2 pi k / n).
/// Every module builds alphabet values through this function so that discrete
/// vectors compare bit-exactly.
cplx alphabet_point(int k, int n, double amplitude = 1.0);

/// Constant-envelope transmit vector: integer phase indices on an N_BS-ary
/// alphabet, all entries sharing one modulus.
struct CEVector {
  std::vector<int> phase_idx;
  double amplitude = 1.0;
  int alphabet_size = 4;

  std::vector<cplx> values() const;
};

/// IRS reflection phases: unit-modulus entries on an N_IRS-ary alphabet.
struct IrsPhases {
  std::vector<int> phase_idx;
  int alphabet_size = 4;

  std::vector<cplx> values() const;
};

struct MuiOptions {
  bool use_irs = true;
  // Keep only the cell's own BS in each user's direct term. Used by the
  // reduced-CSI objectives, where inter-cell direct links are unknown.
  bool own_bs_only = false;
};

/// Per-user residuals e[(j*K)+i] and their summed power.
struct MuiReport {
  std::vector<cplx> e;
  double power = 0.0;
};

/// Multi-cell MUI: e^{[i,j]} = sum_l g_BU x_l + sum_l g_IU Psi G_BI x_l - s.
/// x_all holds one complex vector per cell; psi may be empty when the IRS is
/// disabled or absent. Throws on any dimension mismatch, naming the shapes.
MuiReport mui_power_multi(const ChannelSet& ch,
                          std::span<const std::vector<cplx>> x_all,
                          std::span<const cplx> psi, const SymbolMatrix& sym,
                          MuiOptions opts = {});

/// Single-cell reduction of mui_power_multi; requires ch.cells == 1.
MuiReport mui_power_single(const ChannelSet& ch, std::span<const cplx> x,
                           std::span<const cplx> psi, const SymbolMatrix& sym,
                           MuiOptions opts = {});

/// Achievable rate log2(symbol_power / (mui_power + sigma_w2)), bits per
/// channel use. The noise power keeps the argument finite as MUI -> 0.
double per_user_rate(double mui_power, double symbol_power, double sigma_w2);

struct IrsGain {
  double j_term = 0.0;          // contribution of the IRS path, sign-indefinite
  double irs_free_power = 0.0;  // |eta|^2, MUI power with the IRS removed
};

/// Splits one user's MUI power into the IRS-free part and the IRS term whose
/// sign decides whether the surface helps; their sum is the user's |e|^2.
IrsGain irs_gain_decomposition(const ChannelSet& ch,
                               std::span<const std::vector<cplx>> x_all,
                               std::span<const cplx> psi, const SymbolMatrix& sym,
                               int user, int cell);

struct InterferenceFreeIrs {
  std::vector<cplx> psi_vec;  // scaled solution mu * Pi^H (Pi Pi^H)^{-1} eta
  double mu = 0.0;
  double residual = 0.0;  // || Pi * (psi_vec / mu) - eta ||, before scaling
};

/// Pseudo-inverse IRS solution of Pi psi = eta for K <= M with Pi full row
/// rank. mu^2 = 1 / tr((Pi Pi^H)^{-1}), which equals the trace of the
/// pseudo-inverse of Pi^H Pi.
InterferenceFreeIrs interference_free_irs(const CMat& pi, std::span<const cplx> eta);

}  // namespace irscep
