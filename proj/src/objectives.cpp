#include "irscep/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace irscep {

double SeqQuadObjective::term(std::size_t k, std::span<const cplx> prefix) const {
  if (k >= size()) throw std::invalid_argument("SeqQuadObjective::term: index out of range");
  if (prefix.size() < k + 1)
    throw std::invalid_argument("SeqQuadObjective::term: prefix shorter than k+1");
  cplx acc = lin[k];
  for (std::size_t i = 0; i < k; ++i) acc += pair(k, i) * prefix[i];
  return 2.0 * std::real(std::conj(prefix[k]) * acc);
}

double SeqQuadObjective::total(std::span<const cplx> assignment) const {
  if (assignment.size() != size())
    throw std::invalid_argument("SeqQuadObjective::total: assignment length mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < size(); ++k) s += term(k, assignment.first(k + 1));
  return s;
}

namespace {

// pair = rows^H rows, lin = -rows^H target, the exact sequential split of
// || rows * p - target ||^2 up to a constant.
SeqQuadObjective from_rows(const CMat& rows, std::span<const cplx> target) {
  SeqQuadObjective obj;
  const std::size_t n = rows.cols();
  obj.pair = CMat(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      cplx acc{};
      for (std::size_t r = 0; r < rows.rows(); ++r)
        acc += std::conj(rows(r, a)) * rows(r, b);
      obj.pair(a, b) = acc;
    }
  obj.lin.assign(n, cplx{});
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (std::size_t a = 0; a < n; ++a) obj.lin[a] -= std::conj(rows(r, a)) * target[r];
  return obj;
}

// Composite downlink rows for one cell: direct link plus the own-cell IRS
// path at the given reflection phases. Empty psi drops the IRS path.
CMat composite_rows(const ChannelSet& ch, int cell, std::span<const cplx> psi) {
  CMat rows(ch.users, ch.bs_antennas);
  for (int i = 0; i < ch.users; ++i) {
    auto direct = ch.bu(cell, cell, i);
    for (int n = 0; n < ch.bs_antennas; ++n) rows(i, n) = direct[n];
    if (!psi.empty()) {
      auto giu = ch.iu(cell, i);
      for (int m = 0; m < ch.irs_elements; ++m) {
        const cplx w = giu[m] * psi[m];
        if (w == cplx{}) continue;
        auto gbi = ch.bi_row(cell, m);
        for (int n = 0; n < ch.bs_antennas; ++n) rows(i, n) += w * gbi[n];
      }
    }
  }
  return rows;
}

}  // namespace

SeqQuadObjective build_bs_objective_single(const ChannelSet& ch, int cell,
                                           std::span<const cplx> psi,
                                           const SymbolMatrix& sym) {
  if (!psi.empty() && static_cast<int>(psi.size()) != ch.irs_elements)
    throw std::invalid_argument("build_bs_objective_single: psi length mismatch");
  const CMat rows = composite_rows(ch, cell, psi);
  std::vector<cplx> target(ch.users);
  for (int i = 0; i < ch.users; ++i) target[i] = sym.at(cell, i);
  return from_rows(rows, target);
}

SeqQuadObjective build_irs_objective_single(const ChannelSet& ch, int cell,
                                            std::span<const cplx> x,
                                            const SymbolMatrix& sym) {
  if (static_cast<int>(x.size()) != ch.bs_antennas)
    throw std::invalid_argument("build_irs_objective_single: x length mismatch");
  std::vector<cplx> reflected(ch.irs_elements);
  for (int m = 0; m < ch.irs_elements; ++m)
    reflected[m] = dot_plain(ch.bi_row(cell, m), x);

  CMat rows(ch.users, ch.irs_elements);
  std::vector<cplx> target(ch.users);
  for (int i = 0; i < ch.users; ++i) {
    auto giu = ch.iu(cell, i);
    for (int m = 0; m < ch.irs_elements; ++m) rows(i, m) = giu[m] * reflected[m];
    target[i] = sym.at(cell, i) - dot_plain(ch.bu(cell, cell, i), x);
  }
  return from_rows(rows, target);
}

SeqQuadObjective build_irs_objective_multi(const ChannelSet& ch,
                                           std::span<const std::vector<cplx>> x_all,
                                           const SymbolMatrix& sym,
                                           BsCoupling coupling) {
  if (static_cast<int>(x_all.size()) != ch.cells)
    throw std::invalid_argument("build_irs_objective_multi: need one x per cell");
  std::vector<cplx> reflected(ch.irs_elements);
  for (int l = 0; l < ch.cells; ++l)
    for (int m = 0; m < ch.irs_elements; ++m)
      reflected[m] += dot_plain(ch.bi_row(l, m), x_all[l]);

  CMat rows(ch.cells * ch.users, ch.irs_elements);
  std::vector<cplx> target(static_cast<std::size_t>(ch.cells) * ch.users);
  for (int j = 0; j < ch.cells; ++j) {
    for (int i = 0; i < ch.users; ++i) {
      const int r = j * ch.users + i;
      auto giu = ch.iu(j, i);
      for (int m = 0; m < ch.irs_elements; ++m) rows(r, m) = giu[m] * reflected[m];
      cplx b{};
      if (coupling == BsCoupling::kAllCells) {
        for (int l = 0; l < ch.cells; ++l) b += dot_plain(ch.bu(l, j, i), x_all[l]);
      } else {
        b = dot_plain(ch.bu(j, j, i), x_all[j]);
      }
      target[r] = sym.at(j, i) - b;
    }
  }
  return from_rows(rows, target);
}

namespace {

// Through-IRS coupling of an inter-cell BS under the all-ones substitution:
// sigma = sum over antennas of the effective row g_IU Psi G_BI_l.
cplx meanfield_irs_sum(const ChannelSet& ch, int cell, int user, int other,
                       std::span<const cplx> psi) {
  cplx sigma{};
  if (psi.empty()) return sigma;
  auto giu = ch.iu(cell, user);
  for (int m = 0; m < ch.irs_elements; ++m) {
    cplx row_sum{};
    auto gbi = ch.bi_row(other, m);
    for (int n = 0; n < ch.bs_antennas; ++n) row_sum += gbi[n];
    sigma += giu[m] * psi[m] * row_sum;
  }
  return sigma;
}

double meanfield_coeff(const ChannelSet& ch, int cell, std::span<const cplx> psi,
                       const BetaSpec& beta) {
  const double nt = static_cast<double>(ch.bs_antennas);
  double kappa = 0.0;
  for (int i = 0; i < ch.users; ++i) {
    for (int l = 0; l < ch.cells; ++l) {
      if (l == cell) continue;
      kappa += beta.beta_bu(l, cell, i, ch.cells, ch.users) / nt;
      kappa += std::norm(meanfield_irs_sum(ch, cell, i, l, psi)) / (nt * nt);
    }
  }
  return kappa;
}

}  // namespace

SeqQuadObjective build_bs_objective_stochastic(const ChannelSet& ch, int cell,
                                               std::span<const cplx> psi,
                                               const SymbolMatrix& sym,
                                               const BetaSpec& beta) {
  SeqQuadObjective obj = build_bs_objective_single(ch, cell, psi, sym);
  const double kappa = meanfield_coeff(ch, cell, psi, beta);
  if (kappa != 0.0) {
    for (std::size_t a = 0; a < obj.pair.rows(); ++a)
      for (std::size_t b = 0; b < obj.pair.cols(); ++b) obj.pair(a, b) += kappa;
  }
  return obj;
}

double stochastic_bs_power_direct(const ChannelSet& ch, int cell,
                                  std::span<const cplx> psi,
                                  std::span<const cplx> x, const SymbolMatrix& sym,
                                  const BetaSpec& beta) {
  if (static_cast<int>(x.size()) != ch.bs_antennas)
    throw std::invalid_argument("stochastic_bs_power_direct: x length mismatch");
  const double nt = static_cast<double>(ch.bs_antennas);
  cplx x_sum{};
  for (const cplx& v : x) x_sum += v;
  const double x_sum2 = std::norm(x_sum);

  double power = 0.0;
  for (int i = 0; i < ch.users; ++i) {
    cplx resid = dot_plain(ch.bu(cell, cell, i), x) - sym.at(cell, i);
    if (!psi.empty()) {
      auto giu = ch.iu(cell, i);
      for (int m = 0; m < ch.irs_elements; ++m)
        resid += giu[m] * psi[m] * dot_plain(ch.bi_row(cell, m), x);
    }
    power += std::norm(resid);
    for (int l = 0; l < ch.cells; ++l) {
      if (l == cell) continue;
      power += beta.beta_bu(l, cell, i, ch.cells, ch.users) * x_sum2 / nt;
      power += std::norm(meanfield_irs_sum(ch, cell, i, l, psi)) * x_sum2 / (nt * nt);
    }
  }
  return power;
}

}  // namespace irscep
