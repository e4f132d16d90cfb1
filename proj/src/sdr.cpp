#include "irscep/sdr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace irscep {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double QuadraticObjective::evaluate(std::span<const cplx> head) const {
  if (head.size() + 1 != dim())
    throw std::invalid_argument("QuadraticObjective::evaluate: vector length mismatch");
  std::vector<cplx> v(head.begin(), head.end());
  v.push_back(amplitude);
  cplx acc{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    cplx row{};
    for (std::size_t j = 0; j < v.size(); ++j) row += q(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  return acc.real();
}

SdpSolution solve_diag_sdp(const QuadraticObjective& obj, double tol, int max_iter) {
  const std::size_t n = obj.dim();
  if (n == 0 || obj.q.rows() != n || obj.q.cols() != n)
    throw std::invalid_argument("solve_diag_sdp: shape mismatch between q and c");
  if (n > 256) throw std::invalid_argument("solve_diag_sdp: dimension exceeds guard 256");
  if (!(tol > 0.0) || tol > 1e-3)
    throw std::invalid_argument("solve_diag_sdp: tol must lie in (0, 1e-3]");
  const double herm_tol = 1e-12 * std::max(1.0, max_abs(obj.q));
  if (!is_hermitian(obj.q, herm_tol))
    throw std::invalid_argument("solve_diag_sdp: objective matrix not Hermitian");
  for (double ck : obj.c)
    if (!(ck > 0.0)) throw std::invalid_argument("solve_diag_sdp: diagonal targets must be > 0");

  double c_norm = 0.0, c_max = 0.0;
  for (double ck : obj.c) {
    c_norm += ck * ck;
    c_max = std::max(c_max, ck);
  }
  c_norm = std::sqrt(c_norm);
  const double q_norm = frob_norm(obj.q);
  const double stop_scale = std::max({1.0, q_norm, c_norm});
  const double diag_tol = tol * std::max(1.0, c_max);

  double rho = std::max(1.0, q_norm / std::max<std::size_t>(n, 1));
  constexpr double alpha = 1.6;  // over-relaxation

  CMat y(n, n);
  for (std::size_t i = 0; i < n; ++i) y(i, i) = obj.c[i];
  CMat u(n, n);
  CMat x(n, n), relaxed(n, n), work(n, n);

  int it = 0;
  double r_norm = 0.0, s_norm = 0.0, diag_err = 0.0;
  bool converged = false;
  while (it < max_iter) {
    ++it;
    // X step: projection of Y - U - Q/rho onto the diagonal constraint.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        x(i, j) = y(i, j) - u(i, j) - obj.q(i, j) / rho;
    for (std::size_t i = 0; i < n; ++i) x(i, i) = obj.c[i];

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        relaxed(i, j) = alpha * x(i, j) + (1.0 - alpha) * y(i, j);

    // Y step: PSD projection.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) work(i, j) = relaxed(i, j) + u(i, j);
    CMat y_new = psd_project(work);

    s_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s_norm += std::norm(y_new(i, j) - y(i, j));
    s_norm = rho * std::sqrt(s_norm);

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) += relaxed(i, j) - y_new(i, j);
    y = std::move(y_new);

    r_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r_norm += std::norm(x(i, j) - y(i, j));
    r_norm = std::sqrt(r_norm);

    diag_err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      diag_err = std::max(diag_err, std::abs(y(i, i).real() - obj.c[i]));

    if (r_norm <= tol * stop_scale && s_norm <= tol * stop_scale && diag_err <= diag_tol) {
      converged = true;
      break;
    }

    // Residual balancing, checked sparsely to keep the trajectory smooth.
    if (it % 20 == 0) {
      if (r_norm > 5.0 * s_norm && rho < 1e6) {
        rho *= 2.0;
        for (cplx& v : u.data()) v *= 0.5;
      } else if (s_norm > 5.0 * r_norm && rho > 1e-6) {
        rho *= 0.5;
        for (cplx& v : u.data()) v *= 2.0;
      }
    }
  }

  if (!converged) {
    std::ostringstream os;
    os << "solve_diag_sdp: no convergence in " << max_iter << " iterations (primal "
       << r_norm << ", dual " << s_norm << ", diag " << diag_err << ")";
    throw std::runtime_error(os.str());
  }

  SdpSolution sol;
  sol.x = y;
  sol.iterations = it;
  sol.primal_residual = diag_err;
  cplx tr{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) tr += obj.q(i, j) * y(j, i);
  sol.objective = tr.real();

  HermEig eig = hermitian_eig(y);
  sol.psd_residual = std::max(0.0, -eig.values.front());
  const double top = eig.values.back();
  const double second = n >= 2 ? eig.values[n - 2] : 0.0;
  sol.rank1_ratio = top > 0.0 ? std::max(0.0, second) / top : 1.0;
  return sol;
}

int quantize_phase_index(cplx z, int n) {
  if (n < 2) throw std::invalid_argument("quantize_phase_index: alphabet size must be >= 2");
  if (z == cplx{}) return 0;
  const double arg = std::atan2(z.imag(), z.real());
  int k = static_cast<int>(std::floor(arg * n / kTwoPi + 0.5));
  k %= n;
  if (k < 0) k += n;
  return k;
}

cplx quantize_phase(cplx z, int n, double amplitude) {
  if (!(amplitude > 0.0)) throw std::invalid_argument("quantize_phase: amplitude must be > 0");
  return alphabet_point(quantize_phase_index(z, n), n, amplitude);
}

namespace {

// De-rotates v so the last entry becomes real nonnegative, then maps the
// leading entries onto the alphabet (or the amplitude circle in continuous
// mode) and scores the result exactly.
RoundedSolution finish_candidate(std::vector<cplx> v, const QuadraticObjective& obj,
                                 bool continuous) {
  const std::size_t n = obj.dim() - 1;
  const cplx last = v[n];
  if (std::abs(last) > 0.0) {
    const cplx derot = std::conj(last) / std::abs(last);
    for (cplx& e : v) e *= derot;
  }
  RoundedSolution out;
  out.vec.resize(n);
  if (continuous) {
    for (std::size_t k = 0; k < n; ++k) {
      const double mag = std::abs(v[k]);
      out.vec[k] = mag > 0.0 ? obj.amplitude * v[k] / mag
                             : alphabet_point(0, obj.alphabet_size, obj.amplitude);
    }
  } else {
    out.indices.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      out.indices[k] = quantize_phase_index(v[k], obj.alphabet_size);
      out.vec[k] = alphabet_point(out.indices[k], obj.alphabet_size, obj.amplitude);
    }
  }
  out.objective = obj.evaluate(out.vec);
  return out;
}

}  // namespace

RoundedSolution round_solution(const SdpSolution& sol, const QuadraticObjective& obj,
                               int draws, Rng& rng, bool continuous,
                               double rank1_threshold) {
  const std::size_t dim = obj.dim();
  if (sol.x.rows() != dim || sol.x.cols() != dim)
    throw std::invalid_argument("round_solution: solution/objective dimension mismatch");
  if (draws < 1) throw std::invalid_argument("round_solution: draws must be >= 1");

  if (sol.rank1_ratio < rank1_threshold) {
    HermEig eig = hermitian_eig(sol.x);
    const double lead = eig.values.back();
    std::vector<cplx> v(dim);
    const double scale = std::sqrt(std::max(lead, 0.0));
    for (std::size_t i = 0; i < dim; ++i) v[i] = scale * eig.vectors(i, dim - 1);
    return finish_candidate(std::move(v), obj, continuous);
  }

  const CMat factor = cholesky(sol.x);
  RoundedSolution best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int d = 0; d < draws; ++d) {
    std::vector<cplx> r(dim);
    for (cplx& e : r) e = rng.next_cnormal();
    std::vector<cplx> w(dim);
    for (std::size_t i = 0; i < dim; ++i) w[i] = dot_plain(factor.row(i), r);
    RoundedSolution cand = finish_candidate(std::move(w), obj, continuous);
    if (cand.objective < best.objective) best = std::move(cand);
  }
  return best;
}

QuadraticObjective build_bs_quadratic(const ChannelSet& ch, int cell,
                                      std::span<const cplx> psi,
                                      const SymbolMatrix& sym, const SystemConfig& cfg) {
  const int nt = ch.bs_antennas;
  const bool use_irs = !psi.empty();

  // Effective downlink rows: own-cell direct and IRS paths exactly, other
  // cells through the rank-one all-ones coupling estimate (row means).
  CMat rows(ch.users, nt);
  for (int i = 0; i < ch.users; ++i) {
    auto own = ch.bu(cell, cell, i);
    for (int n = 0; n < nt; ++n) rows(i, n) = own[n];
    if (use_irs) {
      auto giu = ch.iu(cell, i);
      for (int m = 0; m < ch.irs_elements; ++m) {
        const cplx w = giu[m] * psi[m];
        if (w == cplx{}) continue;
        auto gbi = ch.bi_row(cell, m);
        for (int n = 0; n < nt; ++n) rows(i, n) += w * gbi[n];
      }
    }
    for (int l = 0; l < ch.cells; ++l) {
      if (l == cell) continue;
      cplx row_mean{};
      auto direct = ch.bu(l, cell, i);
      for (int n = 0; n < nt; ++n) row_mean += direct[n];
      if (use_irs) {
        auto giu = ch.iu(cell, i);
        for (int m = 0; m < ch.irs_elements; ++m) {
          cplx gbi_sum{};
          auto gbi = ch.bi_row(l, m);
          for (int n = 0; n < nt; ++n) gbi_sum += gbi[n];
          row_mean += giu[m] * psi[m] * gbi_sum;
        }
      }
      row_mean /= static_cast<double>(nt);
      for (int n = 0; n < nt; ++n) rows(i, n) += row_mean;
    }
  }

  QuadraticObjective obj;
  obj.amplitude = cfg.amplitude();
  obj.alphabet_size = cfg.bs_alphabet;
  obj.c.assign(nt + 1, obj.amplitude * obj.amplitude);
  obj.q = CMat(nt + 1, nt + 1);
  for (int a = 0; a < nt; ++a)
    for (int b = 0; b < nt; ++b) {
      cplx acc{};
      for (int r = 0; r < ch.users; ++r) acc += std::conj(rows(r, a)) * rows(r, b);
      obj.q(a, b) = acc;
    }
  for (int a = 0; a < nt; ++a) {
    cplx xi{};
    for (int r = 0; r < ch.users; ++r) xi += std::conj(rows(r, a)) * sym.at(cell, r);
    obj.q(a, nt) = -xi;
    obj.q(nt, a) = -std::conj(xi);
  }
  return obj;
}

QuadraticObjective build_irs_quadratic(const ChannelSet& ch,
                                       std::span<const std::vector<cplx>> x_all,
                                       const SymbolMatrix& sym, const SystemConfig& cfg) {
  if (static_cast<int>(x_all.size()) != ch.cells)
    throw std::invalid_argument("build_irs_quadratic: need one x per cell");
  const int m = ch.irs_elements;
  std::vector<cplx> reflected(m);
  for (int l = 0; l < ch.cells; ++l)
    for (int e = 0; e < m; ++e) reflected[e] += dot_plain(ch.bi_row(l, e), x_all[l]);

  CMat pi(ch.cells * ch.users, m);
  std::vector<cplx> eta(static_cast<std::size_t>(ch.cells) * ch.users);
  for (int j = 0; j < ch.cells; ++j) {
    for (int i = 0; i < ch.users; ++i) {
      const int r = j * ch.users + i;
      auto giu = ch.iu(j, i);
      for (int e = 0; e < m; ++e) pi(r, e) = giu[e] * reflected[e];
      cplx b{};
      for (int l = 0; l < ch.cells; ++l) b += dot_plain(ch.bu(l, j, i), x_all[l]);
      eta[r] = sym.at(j, i) - b;
    }
  }

  QuadraticObjective obj;
  obj.amplitude = 1.0;
  obj.alphabet_size = cfg.irs_alphabet;
  obj.c.assign(m + 1, 1.0);
  obj.q = CMat(m + 1, m + 1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      cplx acc{};
      for (std::size_t r = 0; r < eta.size(); ++r) acc += std::conj(pi(r, a)) * pi(r, b);
      obj.q(a, b) = acc;
    }
  for (int a = 0; a < m; ++a) {
    cplx ba{};
    for (std::size_t r = 0; r < eta.size(); ++r) ba += std::conj(pi(r, a)) * eta[r];
    obj.q(a, m) = -ba;
    obj.q(m, a) = -std::conj(ba);
  }
  return obj;
}

SdrVector sdr_precode_bs(const ChannelSet& ch, std::span<const cplx> psi,
                         const SymbolMatrix& sym, int cell, const SystemConfig& cfg,
                         const SdrOptions& opts, Rng& rng) {
  const QuadraticObjective obj = build_bs_quadratic(ch, cell, psi, sym, cfg);
  const SdpSolution sol = solve_diag_sdp(obj, opts.tol, opts.max_iter);
  const RoundedSolution rounded =
      round_solution(sol, obj, opts.draws, rng, opts.continuous, opts.rank1_threshold);
  return {rounded.vec, rounded.indices, rounded.objective, sol.objective};
}

SdrVector sdr_beamform_irs(const ChannelSet& ch,
                           std::span<const std::vector<cplx>> x_all,
                           const SymbolMatrix& sym, const SystemConfig& cfg,
                           const SdrOptions& opts, Rng& rng) {
  const QuadraticObjective obj = build_irs_quadratic(ch, x_all, sym, cfg);
  if (max_abs(obj.q) == 0.0) {
    // No signal reaches the surface: every setting is equivalent.
    SdrVector out;
    out.values.assign(ch.irs_elements, alphabet_point(0, cfg.irs_alphabet, 1.0));
    out.indices.assign(ch.irs_elements, 0);
    if (opts.continuous) out.indices.clear();
    return out;
  }
  const SdpSolution sol = solve_diag_sdp(obj, opts.tol, opts.max_iter);
  const RoundedSolution rounded =
      round_solution(sol, obj, opts.draws, rng, opts.continuous, opts.rank1_threshold);
  return {rounded.vec, rounded.indices, rounded.objective, sol.objective};
}

}  // namespace irscep
