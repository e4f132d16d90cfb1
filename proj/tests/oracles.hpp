// Test-only oracle evaluations, kept independent of the library's own
// computation paths: matrix-form MUI expansions, duplicate brute-force loops
// and random instance helpers.
#pragma once

#include <complex>
#include <vector>

#include "irscep/channel.hpp"
#include "irscep/linalg.hpp"
#include "irscep/model.hpp"
#include "irscep/rng.hpp"

namespace oracles {

using irscep::cplx;

inline irscep::ChannelSet random_channels(irscep::Rng& rng, int cells, int users, int nt,
                                          int m) {
  irscep::ChannelSet ch = irscep::ChannelSet::zeros(cells, users, nt, m);
  for (cplx& v : ch.bs_user) v = rng.next_cnormal();
  for (cplx& v : ch.bs_irs) v = rng.next_cnormal();
  for (cplx& v : ch.irs_user) v = rng.next_cnormal();
  return ch;
}

inline irscep::SymbolMatrix random_symbols(irscep::Rng& rng, int cells, int users) {
  irscep::SymbolMatrix sym;
  sym.cells = cells;
  sym.users = users;
  sym.s.resize(static_cast<std::size_t>(cells) * users);
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  for (cplx& v : sym.s) {
    const std::uint32_t q = rng.next_below(4);
    v = cplx((q & 1u) ? inv_sqrt2 : -inv_sqrt2, (q & 2u) ? inv_sqrt2 : -inv_sqrt2);
  }
  return sym;
}

inline std::vector<cplx> random_phases(irscep::Rng& rng, int n, int alphabet,
                                       double amplitude) {
  std::vector<cplx> v(n);
  for (cplx& e : v)
    e = irscep::alphabet_point(static_cast<int>(rng.next_below(alphabet)), alphabet,
                               amplitude);
  return v;
}

// Quadratic-form expansion of the single-cell MUI power: six-term sum with
// explicit Gram matrices instead of per-user residuals.
inline double expanded_mui_single(const irscep::ChannelSet& ch,
                                  const std::vector<cplx>& x, const std::vector<cplx>& psi,
                                  const irscep::SymbolMatrix& sym) {
  const int users = ch.users;
  const int nt = ch.bs_antennas;
  const int m = ch.irs_elements;
  double total = 0.0;
  for (int i = 0; i < users; ++i) {
    auto gbu = ch.bu(0, 0, i);
    auto giu = ch.iu(0, i);
    // row f = g_IU Psi G_BI, length nt
    std::vector<cplx> f(nt);
    for (int e = 0; e < m; ++e) {
      const cplx w = giu[e] * psi[e];
      auto gbi = ch.bi_row(0, e);
      for (int n = 0; n < nt; ++n) f[n] += w * gbi[n];
    }
    cplx gx{}, fx{};
    for (int n = 0; n < nt; ++n) {
      gx += gbu[n] * x[n];
      fx += f[n] * x[n];
    }
    const cplx s = sym.at(0, i);
    total += std::norm(gx);                                // x^H g^H g x
    total += std::norm(fx);                                // x^H F^H F x
    total += 2.0 * std::real(std::conj(fx) * gx);          // cross term
    total -= 2.0 * std::real(gx * std::conj(s));           // direct-symbol
    total -= 2.0 * std::real(fx * std::conj(s));           // reflected-symbol
    total += std::norm(s);
  }
  return total;
}

// Multi-cell expansion with explicit double sums over cell pairs.
inline double expanded_mui_multi(const irscep::ChannelSet& ch,
                                 const std::vector<std::vector<cplx>>& x_all,
                                 const std::vector<cplx>& psi,
                                 const irscep::SymbolMatrix& sym) {
  const int cells = ch.cells;
  const int users = ch.users;
  const int nt = ch.bs_antennas;
  const int m = ch.irs_elements;
  double total = 0.0;
  for (int j = 0; j < cells; ++j) {
    for (int i = 0; i < users; ++i) {
      auto giu = ch.iu(j, i);
      std::vector<cplx> gx(cells), fx(cells);
      for (int l = 0; l < cells; ++l) {
        for (int n = 0; n < nt; ++n) gx[l] += ch.bu(l, j, i)[n] * x_all[l][n];
        for (int e = 0; e < m; ++e) {
          cplx gbix{};
          auto gbi = ch.bi_row(l, e);
          for (int n = 0; n < nt; ++n) gbix += gbi[n] * x_all[l][n];
          fx[l] += giu[e] * psi[e] * gbix;
        }
      }
      const cplx s = sym.at(j, i);
      for (int l = 0; l < cells; ++l) {
        for (int lp = 0; lp < cells; ++lp) {
          total += std::real(std::conj(gx[l]) * gx[lp]);
          total += std::real(std::conj(fx[l]) * fx[lp]);
          total += 2.0 * std::real(std::conj(fx[l]) * gx[lp]);
        }
      }
      for (int l = 0; l < cells; ++l) {
        total -= 2.0 * std::real(gx[l] * std::conj(s));
        total -= 2.0 * std::real(fx[l] * std::conj(s));
      }
      total += std::norm(s);
    }
  }
  return total;
}

}  // namespace oracles
