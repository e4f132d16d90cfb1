#include "irscep/validate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "irscep/channel.hpp"
#include "irscep/harness.hpp"
#include "irscep/model.hpp"
#include "irscep/rng.hpp"
#include "irscep/sdr.hpp"
#include "irscep/trellis.hpp"

namespace irscep {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

ChannelSet random_channels(Rng& rng, int cells, int users, int nt, int m) {
  ChannelSet ch = ChannelSet::zeros(cells, users, nt, m);
  for (cplx& v : ch.bs_user) v = rng.next_cnormal();
  for (cplx& v : ch.bs_irs) v = rng.next_cnormal();
  for (cplx& v : ch.irs_user) v = rng.next_cnormal();
  return ch;
}

SymbolMatrix random_symbols(Rng& rng, int cells, int users) {
  SymbolMatrix sym;
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

std::vector<cplx> random_assignment(Rng& rng, int n, int alphabet, double amplitude) {
  std::vector<cplx> v(n);
  for (cplx& e : v)
    e = alphabet_point(static_cast<int>(rng.next_below(alphabet)), alphabet, amplitude);
  return v;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace

CheckResult check_expansion_consistency(std::uint64_t seed, int instances_per_family,
                                        double tol, const ObjectiveMutator& mutate) {
  CheckResult res{"expansion-consistency", true, ""};
  Rng rng(seed);
  int failures = 0;
  std::ostringstream detail;

  for (int inst = 0; inst < instances_per_family; ++inst) {
    const int cells = 1 + static_cast<int>(rng.next_below(3));
    const int users = 1 + static_cast<int>(rng.next_below(4));
    const int nt = 2 + static_cast<int>(rng.next_below(5));
    const int m = 1 + static_cast<int>(rng.next_below(6));
    const double amp = 0.25 + rng.next_double();
    ChannelSet ch = random_channels(rng, cells, users, nt, m);
    const SymbolMatrix sym = random_symbols(rng, cells, users);
    BetaSpec beta;
    beta.inter_cell = 0.1 + rng.next_double();

    std::vector<cplx> psi = random_assignment(rng, m, 4, 1.0);
    std::vector<std::vector<cplx>> x_all(cells);
    for (auto& x : x_all) x = random_assignment(rng, nt, 4, amp);

    const auto run_family = [&](const char* family, SeqQuadObjective obj,
                                const std::vector<cplx>& va, const std::vector<cplx>& vb,
                                double direct_a, double direct_b) {
      if (mutate) mutate(obj);
      const double d_seq = obj.total(va) - obj.total(vb);
      const double d_dir = direct_a - direct_b;
      if (!rel_close(d_seq, d_dir, tol)) {
        if (failures == 0)
          detail << family << " instance " << inst << ": seq " << d_seq << " vs direct "
                 << d_dir;
        ++failures;
      }
    };

    // Transmit-phase family, one cell fixed IRS.
    {
      ChannelSet one = random_channels(rng, 1, users, nt, m);
      const SymbolMatrix s1 = random_symbols(rng, 1, users);
      const std::vector<cplx> xa = random_assignment(rng, nt, 4, amp);
      const std::vector<cplx> xb = random_assignment(rng, nt, 4, amp);
      run_family("bs-single", build_bs_objective_single(one, 0, psi, s1), xa, xb,
                 mui_power_single(one, xa, psi, s1).power,
                 mui_power_single(one, xb, psi, s1).power);

      // IRS-phase family, transmit vector fixed.
      const std::vector<cplx> pa = random_assignment(rng, m, 4, 1.0);
      const std::vector<cplx> pb = random_assignment(rng, m, 4, 1.0);
      run_family("irs-single", build_irs_objective_single(one, 0, xa, s1), pa, pb,
                 mui_power_single(one, xa, pa, s1).power,
                 mui_power_single(one, xa, pb, s1).power);
    }

    // Multi-cell IRS family, full coupling and own-cell coupling.
    {
      const std::vector<cplx> pa = random_assignment(rng, m, 4, 1.0);
      const std::vector<cplx> pb = random_assignment(rng, m, 4, 1.0);
      run_family("irs-multi", build_irs_objective_multi(ch, x_all, sym, BsCoupling::kAllCells),
                 pa, pb, mui_power_multi(ch, x_all, pa, sym).power,
                 mui_power_multi(ch, x_all, pb, sym).power);

      MuiOptions own;
      own.own_bs_only = true;
      run_family("irs-multi-own",
                 build_irs_objective_multi(ch, x_all, sym, BsCoupling::kOwnCellOnly), pa,
                 pb, mui_power_multi(ch, x_all, pa, sym, own).power,
                 mui_power_multi(ch, x_all, pb, sym, own).power);
    }

    // Reduced-CSI transmit family.
    {
      const int cell = static_cast<int>(rng.next_below(cells));
      const std::vector<cplx> xa = random_assignment(rng, nt, 4, amp);
      const std::vector<cplx> xb = random_assignment(rng, nt, 4, amp);
      run_family("bs-stochastic", build_bs_objective_stochastic(ch, cell, psi, sym, beta),
                 xa, xb, stochastic_bs_power_direct(ch, cell, psi, xa, sym, beta),
                 stochastic_bs_power_direct(ch, cell, psi, xb, sym, beta));
    }
  }

  if (failures > 0) {
    res.pass = false;
    std::ostringstream os;
    os << failures << " mismatches; first: " << detail.str();
    res.detail = os.str();
  }
  return res;
}

CheckResult check_trellis_vs_exhaustive(std::uint64_t seed, int instances) {
  CheckResult res{"trellis-vs-exhaustive", true, ""};
  Rng rng(seed);
  for (int inst = 0; inst < instances; ++inst) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    const int a = 2 + static_cast<int>(rng.next_below(3));

    SeqQuadObjective obj;
    obj.pair = CMat(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < r; ++c) {
        obj.pair(r, c) = rng.next_cnormal();
        obj.pair(c, r) = std::conj(obj.pair(r, c));
      }
    obj.lin.resize(n);
    for (auto& v : obj.lin) v = rng.next_cnormal();

    TrellisSpec spec;
    spec.n = n;
    spec.alphabet_size = a;
    spec.memory = n;
    spec.alphabet.resize(a);
    for (int k = 0; k < a; ++k) spec.alphabet[k] = alphabet_point(k, a, 1.0);
    spec.term = [&obj](std::size_t k, std::span<const cplx> p) { return obj.term(k, p); };

    const TrellisResult ex = exhaustive_minimize(spec);
    const TrellisResult full = trellis_minimize(spec);
    if (full.assignment != ex.assignment || full.objective != ex.objective) {
      res.pass = false;
      std::ostringstream os;
      os << "full-memory mismatch at instance " << inst << " (seed " << seed << ")";
      res.detail = os.str();
      return res;
    }

    spec.memory = 1 + rng.next_below(n);
    const TrellisResult reduced = trellis_minimize(spec);
    if (reduced.objective < ex.objective - 1e-9 * std::max(1.0, std::abs(ex.objective))) {
      res.pass = false;
      std::ostringstream os;
      os << "reduced-memory result beats exhaustive at instance " << inst;
      res.detail = os.str();
      return res;
    }
  }
  return res;
}

CheckResult check_sdp_sandwich(std::uint64_t seed, int instances, double sdp_tol) {
  CheckResult res{"sdp-sandwich", true, ""};
  Rng rng(seed);
  for (int inst = 0; inst < instances; ++inst) {
    const int n = 2 + static_cast<int>(rng.next_below(4));
    const double amp = rng.next_below(2) == 0 ? 1.0 : 0.6;
    QuadraticObjective obj;
    obj.amplitude = amp;
    obj.alphabet_size = 4;
    obj.c.assign(n + 1, amp * amp);
    obj.q = CMat(n + 1, n + 1);
    for (int r = 0; r <= n; ++r) {
      obj.q(r, r) = 2.0 * rng.next_double() - 1.0;
      for (int c = 0; c < r; ++c) {
        obj.q(r, c) = rng.next_cnormal();
        obj.q(c, r) = std::conj(obj.q(r, c));
      }
    }

    const SdpSolution sol = solve_diag_sdp(obj, sdp_tol, 200000);

    double discrete_min = std::numeric_limits<double>::infinity();
    std::vector<cplx> head(n);
    std::vector<int> idx(n, 0);
    while (true) {
      for (int k = 0; k < n; ++k) head[k] = alphabet_point(idx[k], 4, amp);
      discrete_min = std::min(discrete_min, obj.evaluate(head));
      int k = n - 1;
      while (k >= 0 && ++idx[k] == 4) idx[k--] = 0;
      if (k < 0) break;
    }

    Rng round_rng(derive_stream(seed, {(std::uint64_t)inst}));
    const RoundedSolution rounded = round_solution(sol, obj, 50, round_rng);

    const double scale = std::max({1.0, std::abs(discrete_min), frob_norm(obj.q)});
    const double slack = std::max(1e-6, 10.0 * sdp_tol);
    if (sol.objective > discrete_min + slack * scale ||
        discrete_min > rounded.objective + 1e-9 * scale) {
      res.pass = false;
      std::ostringstream os;
      os << "violation at instance " << inst << ": bound " << sol.objective
         << ", discrete " << discrete_min << ", rounded " << rounded.objective;
      res.detail = os.str();
      return res;
    }
  }
  return res;
}

CheckResult check_determinism(std::uint64_t seed) {
  CheckResult res{"determinism", true, ""};

  SystemConfig cfg;
  cfg.cells = 2;
  cfg.users_per_cell = 2;
  cfg.bs_antennas = 4;
  cfg.irs_elements = 4;
  cfg.bs_alphabet = 4;
  cfg.irs_alphabet = 4;
  cfg.bs_memory = 2;
  cfg.irs_memory = 2;
  cfg.seed = seed;
  cfg.mc_trials = 2;

  const ChannelSet a = generate_channels(cfg, 1);
  const ChannelSet b = generate_channels(cfg, 1);
  if (a.bs_user != b.bs_user || a.bs_irs != b.bs_irs || a.irs_user != b.irs_user) {
    res.pass = false;
    res.detail = "channel generation differs across identical calls";
    return res;
  }

  const SymbolMatrix sym = generate_symbols(cfg, 1);
  SchemeSpec scheme;
  Rng r1(derive_stream(cfg.seed, {kStreamScheme, 1, 0}));
  Rng r2(derive_stream(cfg.seed, {kStreamScheme, 1, 0}));
  const TrialReport t1 = run_scheme(a, sym, cfg, scheme, r1);
  const TrialReport t2 = run_scheme(b, sym, cfg, scheme, r2);
  if (t1.mui_power_total != t2.mui_power_total || t1.mui_vectors != t2.mui_vectors ||
      t1.x_values != t2.x_values || t1.psi_values != t2.psi_values ||
      t1.user_rates != t2.user_rates || t1.comparisons != t2.comparisons) {
    res.pass = false;
    res.detail = "trial reports differ across identical runs";
    return res;
  }

  Scenario sc;
  sc.config = cfg;
  sc.schemes = {scheme};
  const auto strip_elapsed = [](const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
      const std::size_t pos = line.rfind(',');
      out += line.substr(0, pos);
      out += '\n';
    }
    return out;
  };
  const std::string csv1 = strip_elapsed(rows_to_csv(run_scenario(sc)));
  const std::string csv2 = strip_elapsed(rows_to_csv(run_scenario(sc)));
  if (csv1 != csv2) {
    res.pass = false;
    res.detail = "CSV output differs across identical runs";
  }
  return res;
}

CheckResult check_quantizer(int angles_per_alphabet) {
  CheckResult res{"quantizer", true, ""};
  for (int n : {2, 4, 8}) {
    for (int k = 0; k < angles_per_alphabet; ++k) {
      // Half-offset grid: never lands on a bin boundary, so the nearest-point
      // scan below is unambiguous.
      const double ang =
          -kPi + (static_cast<double>(k) + 0.5) * kTwoPi / angles_per_alphabet;
      const cplx z = std::polar(1.0, ang);
      int best = 0;
      double best_dist = 1e300;
      for (int j = 0; j < n; ++j) {
        double d = std::fmod(std::abs(ang - kTwoPi * j / n), kTwoPi);
        d = std::min(d, kTwoPi - d);
        if (d < best_dist - 1e-13) {
          best_dist = d;
          best = j;
        } else if (d < best_dist + 1e-13) {
          // Tie: the upper bin wins, i.e. the center counterclockwise of ang.
          double diff = kTwoPi * j / n - ang;
          while (diff <= -kPi) diff += kTwoPi;
          while (diff > kPi) diff -= kTwoPi;
          if (diff > 0.0) best = j;
        }
      }
      if (quantize_phase_index(z, n) != best) {
        res.pass = false;
        std::ostringstream os;
        os << "mismatch at N=" << n << ", angle " << ang;
        res.detail = os.str();
        return res;
      }
    }
  }
  return res;
}

bool run_validation(std::uint64_t seed, std::string& out) {
  std::vector<CheckResult> results;
  results.push_back(check_expansion_consistency(seed, 40, 1e-10));
  results.push_back(check_trellis_vs_exhaustive(seed + 1, 40));
  results.push_back(check_sdp_sandwich(seed + 2, 25, 1e-8));
  results.push_back(check_determinism(seed + 3));
  results.push_back(check_quantizer(2000));

  bool all = true;
  std::ostringstream os;
  for (const CheckResult& r : results) {
    os << (r.pass ? "ok   " : "FAIL ") << r.name;
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    os << "\n";
    all = all && r.pass;
  }
  out = os.str();
  return all;
}

}  // namespace irscep
