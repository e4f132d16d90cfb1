#pragma once

#include <span>
#include <vector>

#include "irscep/config.hpp"
#include "irscep/rng.hpp"

namespace irscep {

/// All channel realizations for one Monte-Carlo trial. Every entry is the
/// product of an i.i.d. circularly-symmetric complex Gaussian small-scale
/// draw and the square root of the link's large-scale gain; links with zero
/// large-scale gain are exactly zero.
struct ChannelSet {
  int cells = 0;
  int users = 0;
  int bs_antennas = 0;
  int irs_elements = 0;

  // BS l -> user i of cell j, row vector of length bs_antennas.
  std::vector<cplx> bs_user;
  // BS l -> IRS, irs_elements x bs_antennas row-major per l.
  std::vector<cplx> bs_irs;
  // IRS -> user i of cell j, row vector of length irs_elements.
  std::vector<cplx> irs_user;

  std::span<const cplx> bu(int l, int j, int i) const {
    const std::size_t off =
        ((static_cast<std::size_t>(l) * cells + j) * users + i) * bs_antennas;
    return {bs_user.data() + off, static_cast<std::size_t>(bs_antennas)};
  }
  std::span<const cplx> bi_row(int l, int m) const {
    const std::size_t off =
        (static_cast<std::size_t>(l) * irs_elements + m) * bs_antennas;
    return {bs_irs.data() + off, static_cast<std::size_t>(bs_antennas)};
  }
  std::span<const cplx> iu(int j, int i) const {
    const std::size_t off =
        (static_cast<std::size_t>(j) * users + i) * irs_elements;
    return {irs_user.data() + off, static_cast<std::size_t>(irs_elements)};
  }

  std::span<cplx> bu_mut(int l, int j, int i) {
    const std::size_t off =
        ((static_cast<std::size_t>(l) * cells + j) * users + i) * bs_antennas;
    return {bs_user.data() + off, static_cast<std::size_t>(bs_antennas)};
  }
  std::span<cplx> bi_row_mut(int l, int m) {
    const std::size_t off =
        (static_cast<std::size_t>(l) * irs_elements + m) * bs_antennas;
    return {bs_irs.data() + off, static_cast<std::size_t>(bs_antennas)};
  }
  std::span<cplx> iu_mut(int j, int i) {
    const std::size_t off =
        (static_cast<std::size_t>(j) * users + i) * irs_elements;
    return {irs_user.data() + off, static_cast<std::size_t>(irs_elements)};
  }

  static ChannelSet zeros(int cells, int users, int bs_antennas, int irs_elements);
};

/// Desired unit-power QPSK symbols, one per (cell, user).
struct SymbolMatrix {
  int cells = 0;
  int users = 0;
  std::vector<cplx> s;  // j * users + i

  cplx at(int j, int i) const { return s[static_cast<std::size_t>(j) * users + i]; }
};

/// Deterministic channel generation. Each link owns an rng stream derived
/// from (seed, trial, link indices), so the draws of one link never shift
/// when an unrelated dimension changes.
ChannelSet generate_channels(const SystemConfig& cfg, int trial_index);

/// Independent uniform QPSK draws from the (seed, trial) symbol stream.
SymbolMatrix generate_symbols(const SystemConfig& cfg, int trial_index);

}  // namespace irscep
