#pragma once

#include <span>
#include <vector>

#include "irscep/channel.hpp"
#include "irscep/linalg.hpp"

namespace irscep {

/// Sum-of-sequential-terms form of a Hermitian quadratic MUI objective.
/// Term k depends only on variables 0..k:
///
///   term(k, p) = 2 Re{ conj(p_k) * ( sum_{i<k} pair(k,i) p_i + lin(k) ) }
///
/// and sum_k term(k) equals the MUI power minus the assignment-independent
/// constant, so differences of two assignments match MUI-power differences
/// exactly. pair is Hermitian; only its strictly lower triangle is read.
struct SeqQuadObjective {
  CMat pair;
  std::vector<cplx> lin;

  std::size_t size() const { return lin.size(); }

  /// k is 0-based; prefix must carry the values of variables 0..k.
  double term(std::size_t k, std::span<const cplx> prefix) const;

  /// Sum of all terms on a full assignment.
  double total(std::span<const cplx> assignment) const;
};

/// Whether an IRS objective sees all cells' direct links (full CSI) or only
/// each cell's own one (reduced CSI, inter-cell links replaced by their zero
/// mean).
enum class BsCoupling { kAllCells, kOwnCellOnly };

/// Single-cell transmit-phase objective for cell `cell`, with the IRS fixed
/// at `psi` (pass empty psi to drop the IRS path entirely). Variables are the
/// N_T antenna values.
SeqQuadObjective build_bs_objective_single(const ChannelSet& ch, int cell,
                                           std::span<const cplx> psi,
                                           const SymbolMatrix& sym);

/// Single-cell IRS-phase objective with the transmit vector fixed at `x`.
/// Variables are the M reflection values.
SeqQuadObjective build_irs_objective_single(const ChannelSet& ch, int cell,
                                            std::span<const cplx> x,
                                            const SymbolMatrix& sym);

/// Multi-cell IRS-phase objective given every cell's transmit vector.
SeqQuadObjective build_irs_objective_multi(const ChannelSet& ch,
                                           std::span<const std::vector<cplx>> x_all,
                                           const SymbolMatrix& sym,
                                           BsCoupling coupling);

/// Reduced-CSI transmit-phase objective for cell `cell`: own-cell links enter
/// exactly, inter-cell links through their second-order statistics (the beta
/// table) with the phase-difference matrix replaced by all-ones.
SeqQuadObjective build_bs_objective_stochastic(const ChannelSet& ch, int cell,
                                               std::span<const cplx> psi,
                                               const SymbolMatrix& sym,
                                               const BetaSpec& beta);

/// Direct evaluation of the reduced-CSI per-cell MUI power that
/// build_bs_objective_stochastic decomposes; independent evaluation route
/// used by the consistency checks.
double stochastic_bs_power_direct(const ChannelSet& ch, int cell,
                                  std::span<const cplx> psi,
                                  std::span<const cplx> x, const SymbolMatrix& sym,
                                  const BetaSpec& beta);

}  // namespace irscep
