#include "irscep/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace irscep {

ChannelSet ChannelSet::zeros(int cells, int users, int bs_antennas, int irs_elements) {
  ChannelSet ch;
  ch.cells = cells;
  ch.users = users;
  ch.bs_antennas = bs_antennas;
  ch.irs_elements = irs_elements;
  ch.bs_user.assign(static_cast<std::size_t>(cells) * cells * users * bs_antennas, cplx{});
  ch.bs_irs.assign(static_cast<std::size_t>(cells) * irs_elements * bs_antennas, cplx{});
  ch.irs_user.assign(static_cast<std::size_t>(cells) * users * irs_elements, cplx{});
  return ch;
}

namespace {

void fill_link(std::span<cplx> dst, double beta, std::uint64_t key) {
  if (beta == 0.0) return;  // stays exactly zero
  Rng rng(key);
  const double root = std::sqrt(beta);
  for (cplx& v : dst) v = root * rng.next_cnormal();
}

}  // namespace

ChannelSet generate_channels(const SystemConfig& cfg, int trial_index) {
  cfg.validate();
  if (trial_index < 0) throw std::invalid_argument("generate_channels: trial_index < 0");
  const std::uint64_t trial = static_cast<std::uint64_t>(trial_index);

  ChannelSet ch = ChannelSet::zeros(cfg.cells, cfg.users_per_cell, cfg.bs_antennas,
                                    cfg.irs_elements);

  for (int l = 0; l < cfg.cells; ++l) {
    for (int j = 0; j < cfg.cells; ++j) {
      for (int i = 0; i < cfg.users_per_cell; ++i) {
        const double beta = cfg.beta.beta_bu(l, j, i, cfg.cells, cfg.users_per_cell);
        fill_link(ch.bu_mut(l, j, i), beta,
                  derive_stream(cfg.seed, {kStreamBsUser, trial, (std::uint64_t)l,
                                           (std::uint64_t)j, (std::uint64_t)i}));
      }
    }
  }

  for (int l = 0; l < cfg.cells; ++l) {
    const double beta = cfg.irs_enabled ? cfg.beta.beta_bi(l) : 0.0;
    if (beta == 0.0 || cfg.irs_elements == 0) continue;
    Rng rng(derive_stream(cfg.seed, {kStreamBsIrs, trial, (std::uint64_t)l}));
    const double root = std::sqrt(beta);
    for (int m = 0; m < cfg.irs_elements; ++m)
      for (cplx& v : ch.bi_row_mut(l, m)) v = root * rng.next_cnormal();
  }

  for (int j = 0; j < cfg.cells; ++j) {
    for (int i = 0; i < cfg.users_per_cell; ++i) {
      const double beta =
          cfg.irs_enabled ? cfg.beta.beta_iu(j, i, cfg.users_per_cell) : 0.0;
      fill_link(ch.iu_mut(j, i), beta,
                derive_stream(cfg.seed, {kStreamIrsUser, trial, (std::uint64_t)j,
                                         (std::uint64_t)i}));
    }
  }

  return ch;
}

SymbolMatrix generate_symbols(const SystemConfig& cfg, int trial_index) {
  cfg.validate();
  if (trial_index < 0) throw std::invalid_argument("generate_symbols: trial_index < 0");
  SymbolMatrix sym;
  sym.cells = cfg.cells;
  sym.users = cfg.users_per_cell;
  sym.s.resize(static_cast<std::size_t>(cfg.cells) * cfg.users_per_cell);
  Rng rng(derive_stream(cfg.seed, {kStreamSymbols, (std::uint64_t)trial_index}));
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  for (cplx& v : sym.s) {
    const std::uint32_t q = rng.next_below(4);
    v = cplx((q & 1u) ? inv_sqrt2 : -inv_sqrt2, (q & 2u) ? inv_sqrt2 : -inv_sqrt2);
  }
  return sym;
}

}  // namespace irscep
