#include "irscep/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace irscep {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

cplx alphabet_point(int k, int n, double amplitude) {
  const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
  return {amplitude * std::cos(a), amplitude * std::sin(a)};
}

std::vector<cplx> CEVector::values() const {
  std::vector<cplx> v(phase_idx.size());
  for (std::size_t n = 0; n < v.size(); ++n)
    v[n] = alphabet_point(phase_idx[n], alphabet_size, amplitude);
  return v;
}

std::vector<cplx> IrsPhases::values() const {
  std::vector<cplx> v(phase_idx.size());
  for (std::size_t n = 0; n < v.size(); ++n)
    v[n] = alphabet_point(phase_idx[n], alphabet_size, 1.0);
  return v;
}

namespace {

void check_shapes(const ChannelSet& ch, std::span<const std::vector<cplx>> x_all,
                  std::span<const cplx> psi, const SymbolMatrix& sym, bool use_irs) {
  if (static_cast<int>(x_all.size()) != ch.cells) {
    std::ostringstream os;
    os << "mui: got " << x_all.size() << " transmit vectors for " << ch.cells << " cells";
    throw std::invalid_argument(os.str());
  }
  for (std::size_t l = 0; l < x_all.size(); ++l) {
    if (static_cast<int>(x_all[l].size()) != ch.bs_antennas) {
      std::ostringstream os;
      os << "mui: x[" << l << "] has length " << x_all[l].size() << ", expected "
         << ch.bs_antennas;
      throw std::invalid_argument(os.str());
    }
  }
  if (use_irs && static_cast<int>(psi.size()) != ch.irs_elements) {
    std::ostringstream os;
    os << "mui: psi has length " << psi.size() << ", expected " << ch.irs_elements;
    throw std::invalid_argument(os.str());
  }
  if (sym.cells != ch.cells || sym.users != ch.users) {
    std::ostringstream os;
    os << "mui: symbols are " << sym.cells << "x" << sym.users << ", channels are "
       << ch.cells << "x" << ch.users;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

MuiReport mui_power_multi(const ChannelSet& ch,
                          std::span<const std::vector<cplx>> x_all,
                          std::span<const cplx> psi, const SymbolMatrix& sym,
                          MuiOptions opts) {
  const bool use_irs = opts.use_irs && ch.irs_elements > 0;
  check_shapes(ch, x_all, psi, sym, use_irs);

  // Reflected aggregate a = sum_l G_BI_l x_l, weighted by the IRS phases.
  std::vector<cplx> reflected(use_irs ? ch.irs_elements : 0);
  if (use_irs) {
    for (int l = 0; l < ch.cells; ++l)
      for (int m = 0; m < ch.irs_elements; ++m)
        reflected[m] += dot_plain(ch.bi_row(l, m), x_all[l]);
    for (int m = 0; m < ch.irs_elements; ++m) reflected[m] *= psi[m];
  }

  MuiReport rep;
  rep.e.resize(static_cast<std::size_t>(ch.cells) * ch.users);
  for (int j = 0; j < ch.cells; ++j) {
    for (int i = 0; i < ch.users; ++i) {
      cplx acc = -sym.at(j, i);
      if (opts.own_bs_only) {
        acc += dot_plain(ch.bu(j, j, i), x_all[j]);
      } else {
        for (int l = 0; l < ch.cells; ++l) acc += dot_plain(ch.bu(l, j, i), x_all[l]);
      }
      if (use_irs) acc += dot_plain(ch.iu(j, i), reflected);
      rep.e[static_cast<std::size_t>(j) * ch.users + i] = acc;
      rep.power += std::norm(acc);
    }
  }
  return rep;
}

MuiReport mui_power_single(const ChannelSet& ch, std::span<const cplx> x,
                           std::span<const cplx> psi, const SymbolMatrix& sym,
                           MuiOptions opts) {
  if (ch.cells != 1) {
    std::ostringstream os;
    os << "mui_power_single: channel set has " << ch.cells << " cells, expected 1";
    throw std::invalid_argument(os.str());
  }
  std::vector<std::vector<cplx>> x_all(1);
  x_all[0].assign(x.begin(), x.end());
  return mui_power_multi(ch, x_all, psi, sym, opts);
}

double per_user_rate(double mui_power, double symbol_power, double sigma_w2) {
  if (mui_power < 0.0) throw std::invalid_argument("per_user_rate: mui_power < 0");
  if (!(symbol_power > 0.0)) throw std::invalid_argument("per_user_rate: symbol_power <= 0");
  if (!(sigma_w2 > 0.0)) throw std::invalid_argument("per_user_rate: sigma_w2 <= 0");
  return std::log2(symbol_power / (mui_power + sigma_w2));
}

IrsGain irs_gain_decomposition(const ChannelSet& ch,
                               std::span<const std::vector<cplx>> x_all,
                               std::span<const cplx> psi, const SymbolMatrix& sym,
                               int user, int cell) {
  check_shapes(ch, x_all, psi, sym, ch.irs_elements > 0);
  if (cell < 0 || cell >= ch.cells || user < 0 || user >= ch.users)
    throw std::invalid_argument("irs_gain_decomposition: user index out of range");

  // Row of the effective IRS channel for this user and the IRS-free residual.
  cplx eta = sym.at(cell, user);
  for (int l = 0; l < ch.cells; ++l) eta -= dot_plain(ch.bu(l, cell, user), x_all[l]);

  cplx through_irs{};
  for (int m = 0; m < ch.irs_elements; ++m) {
    cplx am{};
    for (int l = 0; l < ch.cells; ++l) am += dot_plain(ch.bi_row(l, m), x_all[l]);
    through_irs += ch.iu(cell, user)[m] * am * psi[m];
  }

  IrsGain g;
  g.irs_free_power = std::norm(eta);
  g.j_term = std::norm(through_irs) - 2.0 * std::real(std::conj(eta) * through_irs);
  return g;
}

InterferenceFreeIrs interference_free_irs(const CMat& pi, std::span<const cplx> eta) {
  const std::size_t k = pi.rows();
  const std::size_t m = pi.cols();
  if (eta.size() != k) throw std::invalid_argument("interference_free_irs: eta length mismatch");
  if (k == 0) throw std::invalid_argument("interference_free_irs: empty system");
  if (k > m) {
    std::ostringstream os;
    os << "interference_free_irs: over-determined, K=" << k << " > M=" << m;
    throw std::invalid_argument(os.str());
  }

  // Gram = Pi Pi^H, K x K Hermitian PSD; full row rank iff positive definite.
  CMat gram(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) gram(r, c) = vdot(pi.row(c), pi.row(r));

  CMat l;
  if (!try_cholesky(gram, l, 1e-12))
    throw std::runtime_error("interference_free_irs: Pi not full row rank");

  std::vector<cplx> y = lu_solve(gram, std::vector<cplx>(eta.begin(), eta.end()));
  std::vector<cplx> unscaled = adjoint_vec(pi, y);

  InterferenceFreeIrs out;
  const std::vector<cplx> back = mat_vec(pi, unscaled);
  double res = 0.0;
  for (std::size_t r = 0; r < k; ++r) res += std::norm(back[r] - eta[r]);
  out.residual = std::sqrt(res);
  out.mu = std::sqrt(1.0 / trace_of_inverse(gram));
  out.psi_vec.resize(m);
  for (std::size_t c = 0; c < m; ++c) out.psi_vec[c] = out.mu * unscaled[c];
  return out;
}

}  // namespace irscep
