#include "irscep/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "irscep/objectives.hpp"
#include "irscep/trellis.hpp"

namespace irscep {

const char* to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::kTrellisMain: return "trellis-main";
    case SchemeKind::kTrellisLowOverhead: return "trellis-low-overhead";
    case SchemeKind::kSdrDiscrete: return "sdr-discrete";
    case SchemeKind::kSdrContinuous: return "sdr-continuous";
    case SchemeKind::kNoIrs: return "no-irs";
    case SchemeKind::kRandomPhase: return "random-phase";
  }
  return "?";
}

SchemeKind scheme_kind_from_string(const std::string& s) {
  if (s == "trellis-main") return SchemeKind::kTrellisMain;
  if (s == "trellis-low-overhead") return SchemeKind::kTrellisLowOverhead;
  if (s == "sdr-discrete") return SchemeKind::kSdrDiscrete;
  if (s == "sdr-continuous") return SchemeKind::kSdrContinuous;
  if (s == "no-irs") return SchemeKind::kNoIrs;
  if (s == "random-phase") return SchemeKind::kRandomPhase;
  throw std::invalid_argument("unknown scheme kind '" + s + "'");
}

const char* TrialReport::tag() const {
  switch (kind) {
    case SchemeKind::kTrellisMain: return "trellis-main";
    case SchemeKind::kTrellisLowOverhead: return "trellis-low-overhead";
    case SchemeKind::kSdrDiscrete:
    case SchemeKind::kSdrContinuous: return "sdr";
    case SchemeKind::kNoIrs: return "no-irs-baseline";
    case SchemeKind::kRandomPhase: return "random-phase-baseline";
  }
  return "?";
}

void SchemeSpec::validate() const {
  if (rounds < 1) throw std::invalid_argument("scheme: rounds must be >= 1");
  if ((kind == SchemeKind::kSdrDiscrete || kind == SchemeKind::kSdrContinuous) &&
      rounding_draws < 1)
    throw std::invalid_argument("scheme: rounding_draws must be >= 1 for sdr kinds");
  if (!(sdp_tol > 0.0) || sdp_tol > 1e-3)
    throw std::invalid_argument("scheme: sdp_tol must lie in (0, 1e-3]");
  if (sdp_max_iter < 1) throw std::invalid_argument("scheme: sdp_max_iter must be >= 1");
}

namespace {

std::vector<cplx> bs_alphabet(const SystemConfig& cfg) {
  std::vector<cplx> a(cfg.bs_alphabet);
  for (int k = 0; k < cfg.bs_alphabet; ++k)
    a[k] = alphabet_point(k, cfg.bs_alphabet, cfg.amplitude());
  return a;
}

std::vector<cplx> irs_alphabet(const SystemConfig& cfg) {
  std::vector<cplx> a(cfg.irs_alphabet);
  for (int k = 0; k < cfg.irs_alphabet; ++k) a[k] = alphabet_point(k, cfg.irs_alphabet, 1.0);
  return a;
}

std::vector<cplx> initial_psi(const SystemConfig& cfg, Rng& rng) {
  std::vector<cplx> psi(cfg.irs_elements);
  for (int m = 0; m < cfg.irs_elements; ++m) {
    const int idx = cfg.psi_init == PsiInit::kRandom
                        ? static_cast<int>(rng.next_below(cfg.irs_alphabet))
                        : 0;
    psi[m] = alphabet_point(idx, cfg.irs_alphabet, 1.0);
  }
  return psi;
}

TrellisResult minimize_seq(const SeqQuadObjective& obj, std::vector<cplx> alphabet,
                           std::size_t memory) {
  TrellisSpec spec;
  spec.n = obj.size();
  spec.alphabet_size = alphabet.size();
  spec.memory = std::min(memory, spec.n);
  spec.alphabet = std::move(alphabet);
  spec.term = [&obj](std::size_t k, std::span<const cplx> prefix) {
    return obj.term(k, prefix);
  };
  return trellis_minimize(spec);
}

// One transmit pass for one cell; `psi` empty drops the IRS path.
TrellisResult bs_pass(const ChannelSet& ch, int cell, std::span<const cplx> psi,
                      const SymbolMatrix& sym, const SystemConfig& cfg,
                      bool stochastic) {
  const SeqQuadObjective obj =
      stochastic ? build_bs_objective_stochastic(ch, cell, psi, sym, cfg.beta)
                 : build_bs_objective_single(ch, cell, psi, sym);
  return minimize_seq(obj, bs_alphabet(cfg), cfg.bs_memory);
}

std::vector<cplx> indices_to_values(const std::vector<int>& idx, int alphabet,
                                    double amplitude) {
  std::vector<cplx> v(idx.size());
  for (std::size_t n = 0; n < idx.size(); ++n)
    v[n] = alphabet_point(idx[n], alphabet, amplitude);
  return v;
}

void finish_report(TrialReport& rep, const ChannelSet& ch, const SymbolMatrix& sym,
                   const SystemConfig& cfg, bool use_irs) {
  MuiOptions opts;
  opts.use_irs = use_irs;
  const MuiReport mui = mui_power_multi(ch, rep.x_values,
                                        use_irs ? std::span<const cplx>(rep.psi_values)
                                                : std::span<const cplx>{},
                                        sym, opts);
  rep.mui_vectors = mui.e;
  rep.mui_power_total = mui.power;
  rep.user_rates.resize(mui.e.size());
  double mean = 0.0;
  for (std::size_t u = 0; u < mui.e.size(); ++u) {
    const int j = static_cast<int>(u) / ch.users;
    const int i = static_cast<int>(u) % ch.users;
    rep.user_rates[u] =
        per_user_rate(std::norm(mui.e[u]), std::norm(sym.at(j, i)), cfg.noise_power);
    mean += rep.user_rates[u];
  }
  rep.per_user_rate = mui.e.empty() ? 0.0 : mean / static_cast<double>(mui.e.size());
  rep.per_cell_rate = ch.cells > 0 ? mean / static_cast<double>(ch.cells) : 0.0;
}

// Shared trellis pipeline: per-cell transmit passes (single-cell or
// stochastic objective), then an IRS pass on the chosen multi-cell coupling,
// alternated `rounds` times.
TrialReport run_trellis(const ChannelSet& ch, const SymbolMatrix& sym,
                        const SystemConfig& cfg, const SchemeSpec& scheme, Rng& rng,
                        bool stochastic, BsCoupling irs_coupling) {
  TrialReport rep;
  rep.kind = scheme.kind;
  const bool use_irs = cfg.irs_enabled && ch.irs_elements > 0;
  std::vector<cplx> psi = use_irs ? initial_psi(cfg, rng) : std::vector<cplx>{};

  rep.x_values.assign(ch.cells, {});
  for (int round = 0; round < scheme.rounds; ++round) {
    for (int j = 0; j < ch.cells; ++j) {
      const TrellisResult r = bs_pass(ch, j, psi, sym, cfg, stochastic);
      rep.comparisons += r.comparisons;
      rep.x_values[j] = indices_to_values(r.assignment, cfg.bs_alphabet, cfg.amplitude());
    }
    if (use_irs) {
      const SeqQuadObjective obj =
          build_irs_objective_multi(ch, rep.x_values, sym, irs_coupling);
      const TrellisResult r = minimize_seq(obj, irs_alphabet(cfg), cfg.irs_memory);
      rep.comparisons += r.comparisons;
      psi = indices_to_values(r.assignment, cfg.irs_alphabet, 1.0);
    }
  }
  rep.psi_values = psi;
  finish_report(rep, ch, sym, cfg, use_irs);
  return rep;
}

}  // namespace

TrialReport run_single_cell(const ChannelSet& ch, const SymbolMatrix& sym,
                            const SystemConfig& cfg, const SchemeSpec& scheme,
                            Rng& rng) {
  if (ch.cells != 1)
    throw std::invalid_argument("run_single_cell: channel set must have one cell");
  TrialReport rep;
  rep.kind = scheme.kind;
  const bool use_irs = cfg.irs_enabled && ch.irs_elements > 0;
  std::vector<cplx> psi = use_irs ? initial_psi(cfg, rng) : std::vector<cplx>{};

  rep.x_values.assign(1, {});
  for (int round = 0; round < scheme.rounds; ++round) {
    const TrellisResult rx = bs_pass(ch, 0, psi, sym, cfg, false);
    rep.comparisons += rx.comparisons;
    rep.x_values[0] = indices_to_values(rx.assignment, cfg.bs_alphabet, cfg.amplitude());
    if (use_irs) {
      const SeqQuadObjective obj = build_irs_objective_single(ch, 0, rep.x_values[0], sym);
      const TrellisResult rp = minimize_seq(obj, irs_alphabet(cfg), cfg.irs_memory);
      rep.comparisons += rp.comparisons;
      psi = indices_to_values(rp.assignment, cfg.irs_alphabet, 1.0);
    }
  }
  rep.psi_values = psi;
  finish_report(rep, ch, sym, cfg, use_irs);
  return rep;
}

TrialReport run_multicell_main(const ChannelSet& ch, const SymbolMatrix& sym,
                               const SystemConfig& cfg, const SchemeSpec& scheme,
                               Rng& rng) {
  return run_trellis(ch, sym, cfg, scheme, rng, false, BsCoupling::kAllCells);
}

TrialReport run_multicell_low_overhead(const ChannelSet& ch, const SymbolMatrix& sym,
                                       const SystemConfig& cfg,
                                       const SchemeSpec& scheme, Rng& rng) {
  TrialReport rep = run_trellis(ch, sym, cfg, scheme, rng, true, BsCoupling::kOwnCellOnly);
  rep.overhead_saved = static_cast<std::uint64_t>(cfg.cells) * (cfg.cells - 1) *
                       cfg.users_per_cell * cfg.bs_antennas;
  return rep;
}

TrialReport run_multicell_sdr(const ChannelSet& ch, const SymbolMatrix& sym,
                              const SystemConfig& cfg, const SchemeSpec& scheme,
                              Rng& rng) {
  TrialReport rep;
  rep.kind = scheme.kind;
  const bool use_irs = cfg.irs_enabled && ch.irs_elements > 0;
  const std::vector<cplx> psi0 = use_irs ? initial_psi(cfg, rng) : std::vector<cplx>{};

  SdrOptions opts;
  opts.tol = scheme.sdp_tol;
  opts.max_iter = scheme.sdp_max_iter;
  opts.draws = scheme.rounding_draws;
  opts.rank1_threshold = scheme.rank1_threshold;
  opts.continuous = scheme.kind == SchemeKind::kSdrContinuous;

  rep.x_values.assign(ch.cells, {});
  for (int j = 0; j < ch.cells; ++j)
    rep.x_values[j] = sdr_precode_bs(ch, psi0, sym, j, cfg, opts, rng).values;
  if (use_irs) {
    rep.psi_values = sdr_beamform_irs(ch, rep.x_values, sym, cfg, opts, rng).values;
  }
  finish_report(rep, ch, sym, cfg, use_irs);
  return rep;
}

TrialReport run_scheme(const ChannelSet& ch, const SymbolMatrix& sym,
                       const SystemConfig& cfg, const SchemeSpec& scheme, Rng& rng) {
  scheme.validate();
  switch (scheme.kind) {
    case SchemeKind::kTrellisMain:
      if (ch.cells == 1) return run_single_cell(ch, sym, cfg, scheme, rng);
      return run_multicell_main(ch, sym, cfg, scheme, rng);
    case SchemeKind::kTrellisLowOverhead:
      return run_multicell_low_overhead(ch, sym, cfg, scheme, rng);
    case SchemeKind::kSdrDiscrete:
    case SchemeKind::kSdrContinuous:
      return run_multicell_sdr(ch, sym, cfg, scheme, rng);
    case SchemeKind::kNoIrs: {
      TrialReport rep;
      rep.kind = scheme.kind;
      rep.x_values.assign(ch.cells, {});
      for (int j = 0; j < ch.cells; ++j) {
        const TrellisResult r = bs_pass(ch, j, {}, sym, cfg, false);
        rep.comparisons += r.comparisons;
        rep.x_values[j] = indices_to_values(r.assignment, cfg.bs_alphabet, cfg.amplitude());
      }
      finish_report(rep, ch, sym, cfg, false);
      return rep;
    }
    case SchemeKind::kRandomPhase: {
      // Same transmit pass as the optimized scheme (against the initial
      // reflection), but the surface then takes uniformly random phases; the
      // baseline differs from trellis-main only in the IRS step.
      TrialReport rep;
      rep.kind = scheme.kind;
      const bool use_irs = cfg.irs_enabled && ch.irs_elements > 0;
      std::vector<cplx> psi(use_irs ? ch.irs_elements : 0);
      for (cplx& p : psi)
        p = alphabet_point(static_cast<int>(rng.next_below(cfg.irs_alphabet)),
                           cfg.irs_alphabet, 1.0);
      const std::vector<cplx> psi0 = use_irs ? initial_psi(cfg, rng) : std::vector<cplx>{};
      rep.psi_values = psi;
      rep.x_values.assign(ch.cells, {});
      for (int j = 0; j < ch.cells; ++j) {
        const TrellisResult r = bs_pass(ch, j, psi0, sym, cfg, false);
        rep.comparisons += r.comparisons;
        rep.x_values[j] = indices_to_values(r.assignment, cfg.bs_alphabet, cfg.amplitude());
      }
      finish_report(rep, ch, sym, cfg, use_irs);
      return rep;
    }
  }
  throw std::logic_error("run_scheme: unhandled scheme kind");
}

}  // namespace irscep
