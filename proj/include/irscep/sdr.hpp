#pragma once

#include <optional>
#include <span>
#include <vector>

#include "irscep/channel.hpp"
#include "irscep/config.hpp"
#include "irscep/linalg.hpp"
#include "irscep/model.hpp"
#include "irscep/rng.hpp"

namespace irscep {

/// Augmented Hermitian quadratic form tr(Q v v^H) with the required diagonal
/// of the lifted variable. The last coordinate is the augmentation entry that
/// absorbs the linear term; its value is pinned to `amplitude` at recovery.
struct QuadraticObjective {
  CMat q;                 // (n+1) x (n+1) Hermitian
  std::vector<double> c;  // required diagonal values, all > 0
  double amplitude = 1.0;
  int alphabet_size = 4;

  std::size_t dim() const { return c.size(); }

  /// Exact discrete objective Re(v^H Q v) with the augmentation entry pinned.
  double evaluate(std::span<const cplx> head) const;
};

struct SdpSolution {
  CMat x;
  double objective = 0.0;
  double primal_residual = 0.0;  // max |X_kk - c_k|
  double psd_residual = 0.0;     // clipped magnitude of the most negative eigenvalue
  double rank1_ratio = 1.0;      // lambda_2 / lambda_1
  int iterations = 0;
};

/// Solves min tr(QX) s.t. diag(X) = c, X >= 0 by an ADMM splitting with PSD
/// projection and over-relaxation. Any convergent scheme meeting the residual
/// contract is acceptable here; the objective is a lower bound (up to
/// tolerance scale) on every feasible discrete assignment. Guard: dim <= 256.
SdpSolution solve_diag_sdp(const QuadraticObjective& obj, double tol = 1e-8,
                           int max_iter = 50000);

/// Index of the N-ary alphabet bin containing arg(z): bin k covers
/// [(2k-1)pi/N, (2k+1)pi/N), boundary angles belong to the upper bin,
/// arg(0) counts as 0.
int quantize_phase_index(cplx z, int n);

/// Nearest alphabet point amplitude * exp(j 2 pi k / N) under the same
/// half-open bin convention.
cplx quantize_phase(cplx z, int n, double amplitude);

struct RoundedSolution {
  std::vector<cplx> vec;           // length dim-1, augmentation dropped
  std::vector<int> indices;        // alphabet indices; empty in continuous mode
  double objective = 0.0;          // exact discrete/projected objective
};

/// Recovers a feasible vector from the SDP solution. Near-rank-1 solutions
/// take the dominant eigenvector, de-rotated so the augmentation entry lands
/// on its pinned value; otherwise `draws` Gaussian rounding passes against a
/// Cholesky factor keep the best exactly-evaluated candidate. Continuous mode
/// skips the quantizer and projects entrywise onto the amplitude circle.
RoundedSolution round_solution(const SdpSolution& sol, const QuadraticObjective& obj,
                               int draws, Rng& rng, bool continuous = false,
                               double rank1_threshold = 1e-6);

struct SdrOptions {
  double tol = 1e-8;
  int max_iter = 50000;
  int draws = 100;
  double rank1_threshold = 1e-6;
  bool continuous = false;
};

/// Builds the augmented transmit-phase objective for one cell, with inter-cell
/// coupling estimated by the all-ones phase-difference substitution, and the
/// IRS fixed at `psi`.
QuadraticObjective build_bs_quadratic(const ChannelSet& ch, int cell,
                                      std::span<const cplx> psi,
                                      const SymbolMatrix& sym, const SystemConfig& cfg);

/// Builds the augmented IRS-phase objective given every cell's transmit vector.
QuadraticObjective build_irs_quadratic(const ChannelSet& ch,
                                       std::span<const std::vector<cplx>> x_all,
                                       const SymbolMatrix& sym, const SystemConfig& cfg);

struct SdrVector {
  std::vector<cplx> values;
  std::vector<int> indices;  // empty in continuous mode
  double objective = 0.0;    // augmented-form objective of the returned vector
  double sdp_bound = 0.0;
};

/// Relax-and-round transmit design for one cell.
SdrVector sdr_precode_bs(const ChannelSet& ch, std::span<const cplx> psi,
                         const SymbolMatrix& sym, int cell, const SystemConfig& cfg,
                         const SdrOptions& opts, Rng& rng);

/// Relax-and-round IRS design given all transmit vectors. A degenerate
/// objective (zero reflected signal) deterministically returns zero phases.
SdrVector sdr_beamform_irs(const ChannelSet& ch,
                           std::span<const std::vector<cplx>> x_all,
                           const SymbolMatrix& sym, const SystemConfig& cfg,
                           const SdrOptions& opts, Rng& rng);

}  // namespace irscep
