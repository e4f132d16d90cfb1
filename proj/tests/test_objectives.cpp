#include <cmath>

#include "doctest.h"
#include "irscep/model.hpp"
#include "irscep/objectives.hpp"
#include "oracles.hpp"

using namespace irscep;

namespace {

bool diff_close(double a, double b, double tol = 1e-10) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("transmit-term sums track single-cell MUI differences") {
  Rng rng(41);
  for (int inst = 0; inst < 30; ++inst) {
    const int users = 1 + rng.next_below(4);
    const int nt = 2 + rng.next_below(5);
    const int m = 1 + rng.next_below(4);
    ChannelSet ch = oracles::random_channels(rng, 1, users, nt, m);
    const SymbolMatrix sym = oracles::random_symbols(rng, 1, users);
    const std::vector<cplx> psi = oracles::random_phases(rng, m, 4, 1.0);
    const SeqQuadObjective obj = build_bs_objective_single(ch, 0, psi, sym);

    const std::vector<cplx> xa = oracles::random_phases(rng, nt, 4, 0.7);
    const std::vector<cplx> xb = oracles::random_phases(rng, nt, 4, 0.7);
    const double d_seq = obj.total(xa) - obj.total(xb);
    const double d_dir = mui_power_single(ch, xa, psi, sym).power -
                         mui_power_single(ch, xb, psi, sym).power;
    CHECK(diff_close(d_seq, d_dir));
  }
}

TEST_CASE("first transmit term vanishes with zero symbols") {
  Rng rng(42);
  ChannelSet ch = oracles::random_channels(rng, 1, 2, 3, 2);
  SymbolMatrix sym{1, 2, std::vector<cplx>(2, cplx{})};
  const std::vector<cplx> psi = oracles::random_phases(rng, 2, 4, 1.0);
  const SeqQuadObjective obj = build_bs_objective_single(ch, 0, psi, sym);
  const std::vector<cplx> x = oracles::random_phases(rng, 3, 4, 1.0);
  CHECK(obj.term(0, x) == 0.0);  // empty pair sum, zero linear part
}

TEST_CASE("transmit terms depend only on their prefix") {
  Rng rng(43);
  ChannelSet ch = oracles::random_channels(rng, 1, 2, 2, 2);
  const SymbolMatrix sym = oracles::random_symbols(rng, 1, 2);
  const std::vector<cplx> psi = oracles::random_phases(rng, 2, 4, 1.0);
  const SeqQuadObjective obj = build_bs_objective_single(ch, 0, psi, sym);

  std::vector<cplx> x = oracles::random_phases(rng, 2, 4, 1.0);
  const double t0 = obj.term(0, x);
  const double t1 = obj.term(1, x);
  x[0] *= cplx{0.0, 1.0};  // change the first variable
  CHECK(obj.term(1, x) != t1);
  const double t0_after = obj.term(0, x);
  // term(0) has no pair contribution; it changes only through its own value.
  x[1] *= cplx{0.0, 1.0};
  CHECK(obj.term(0, x) == t0_after);
  (void)t0;
}

TEST_CASE("IRS-term sums track single-cell MUI differences") {
  Rng rng(44);
  for (int inst = 0; inst < 30; ++inst) {
    const int users = 1 + rng.next_below(4);
    const int nt = 2 + rng.next_below(4);
    const int m = 1 + rng.next_below(6);
    ChannelSet ch = oracles::random_channels(rng, 1, users, nt, m);
    const SymbolMatrix sym = oracles::random_symbols(rng, 1, users);
    const std::vector<cplx> x = oracles::random_phases(rng, nt, 4, 0.8);
    const SeqQuadObjective obj = build_irs_objective_single(ch, 0, x, sym);

    const std::vector<cplx> pa = oracles::random_phases(rng, m, 4, 1.0);
    const std::vector<cplx> pb = oracles::random_phases(rng, m, 4, 1.0);
    const double d_seq = obj.total(pa) - obj.total(pb);
    const double d_dir = mui_power_single(ch, x, pa, sym).power -
                         mui_power_single(ch, x, pb, sym).power;
    CHECK(diff_close(d_seq, d_dir));
  }
}

TEST_CASE("zero BS-IRS channel kills every IRS term") {
  Rng rng(45);
  ChannelSet ch = oracles::random_channels(rng, 1, 2, 3, 3);
  for (cplx& v : ch.bs_irs) v = cplx{};
  const SymbolMatrix sym = oracles::random_symbols(rng, 1, 2);
  const std::vector<cplx> x = oracles::random_phases(rng, 3, 4, 1.0);
  const SeqQuadObjective obj = build_irs_objective_single(ch, 0, x, sym);
  const std::vector<cplx> psi = oracles::random_phases(rng, 3, 4, 1.0);
  for (std::size_t k = 0; k < 3; ++k) CHECK(obj.term(k, psi) == 0.0);
}

TEST_CASE("multi-cell IRS terms track MUI differences in both couplings") {
  Rng rng(46);
  for (int inst = 0; inst < 30; ++inst) {
    const int cells = 1 + rng.next_below(3);
    const int users = 1 + rng.next_below(3);
    const int nt = 2 + rng.next_below(3);
    const int m = 1 + rng.next_below(6);
    ChannelSet ch = oracles::random_channels(rng, cells, users, nt, m);
    const SymbolMatrix sym = oracles::random_symbols(rng, cells, users);
    std::vector<std::vector<cplx>> x_all(cells);
    for (auto& x : x_all) x = oracles::random_phases(rng, nt, 4, 0.6);

    const std::vector<cplx> pa = oracles::random_phases(rng, m, 4, 1.0);
    const std::vector<cplx> pb = oracles::random_phases(rng, m, 4, 1.0);

    const SeqQuadObjective main =
        build_irs_objective_multi(ch, x_all, sym, BsCoupling::kAllCells);
    CHECK(diff_close(main.total(pa) - main.total(pb),
                     mui_power_multi(ch, x_all, pa, sym).power -
                         mui_power_multi(ch, x_all, pb, sym).power));

    MuiOptions own;
    own.own_bs_only = true;
    const SeqQuadObjective low =
        build_irs_objective_multi(ch, x_all, sym, BsCoupling::kOwnCellOnly);
    CHECK(diff_close(low.total(pa) - low.total(pb),
                     mui_power_multi(ch, x_all, pa, sym, own).power -
                         mui_power_multi(ch, x_all, pb, sym, own).power));
  }
}

TEST_CASE("couplings coincide when inter-cell direct links vanish") {
  Rng rng(47);
  const int cells = 3, users = 2, nt = 3, m = 4;
  ChannelSet ch = oracles::random_channels(rng, cells, users, nt, m);
  for (int l = 0; l < cells; ++l)
    for (int j = 0; j < cells; ++j)
      if (l != j)
        for (int i = 0; i < users; ++i)
          for (cplx& v : ch.bu_mut(l, j, i)) v = cplx{};
  const SymbolMatrix sym = oracles::random_symbols(rng, cells, users);
  std::vector<std::vector<cplx>> x_all(cells);
  for (auto& x : x_all) x = oracles::random_phases(rng, nt, 4, 1.0);

  const SeqQuadObjective a =
      build_irs_objective_multi(ch, x_all, sym, BsCoupling::kAllCells);
  const SeqQuadObjective b =
      build_irs_objective_multi(ch, x_all, sym, BsCoupling::kOwnCellOnly);
  const std::vector<cplx> psi = oracles::random_phases(rng, m, 4, 1.0);
  for (std::size_t k = 0; k < static_cast<std::size_t>(m); ++k)
    CHECK(a.term(k, psi) == doctest::Approx(b.term(k, psi)).epsilon(1e-12));
}

TEST_CASE("zero reflected aggregate kills every multi-cell IRS term") {
  Rng rng(48);
  const int cells = 2, users = 2, nt = 3, m = 3;
  ChannelSet ch = oracles::random_channels(rng, cells, users, nt, m);
  for (cplx& v : ch.bs_irs) v = cplx{};  // a = 0
  const SymbolMatrix sym = oracles::random_symbols(rng, cells, users);
  std::vector<std::vector<cplx>> x_all(cells);
  for (auto& x : x_all) x = oracles::random_phases(rng, nt, 4, 1.0);
  const SeqQuadObjective obj =
      build_irs_objective_multi(ch, x_all, sym, BsCoupling::kAllCells);
  const std::vector<cplx> psi = oracles::random_phases(rng, m, 4, 1.0);
  for (std::size_t k = 0; k < static_cast<std::size_t>(m); ++k)
    CHECK(obj.term(k, psi) == 0.0);
}

TEST_CASE("single-cell IRS terms agree with the multi-cell build at L=1") {
  Rng rng(49);
  ChannelSet ch = oracles::random_channels(rng, 1, 3, 3, 5);
  const SymbolMatrix sym = oracles::random_symbols(rng, 1, 3);
  const std::vector<cplx> x = oracles::random_phases(rng, 3, 4, 0.7);
  std::vector<std::vector<cplx>> x_all = {x};
  const SeqQuadObjective single = build_irs_objective_single(ch, 0, x, sym);
  const SeqQuadObjective multi =
      build_irs_objective_multi(ch, x_all, sym, BsCoupling::kAllCells);
  const std::vector<cplx> psi = oracles::random_phases(rng, 5, 4, 1.0);
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(single.term(k, psi) == doctest::Approx(multi.term(k, psi)).epsilon(1e-12));
}

TEST_CASE("stochastic transmit terms track the reduced-CSI power differences") {
  Rng rng(50);
  for (int inst = 0; inst < 30; ++inst) {
    const int cells = 1 + rng.next_below(3);
    const int users = 1 + rng.next_below(3);
    const int nt = 2 + rng.next_below(5);
    const int m = 1 + rng.next_below(4);
    ChannelSet ch = oracles::random_channels(rng, cells, users, nt, m);
    const SymbolMatrix sym = oracles::random_symbols(rng, cells, users);
    BetaSpec beta;
    beta.inter_cell = 0.1 + rng.next_double();
    const std::vector<cplx> psi = oracles::random_phases(rng, m, 4, 1.0);
    const int cell = rng.next_below(cells);
    const SeqQuadObjective obj = build_bs_objective_stochastic(ch, cell, psi, sym, beta);

    const std::vector<cplx> xa = oracles::random_phases(rng, nt, 4, 0.8);
    const std::vector<cplx> xb = oracles::random_phases(rng, nt, 4, 0.8);
    const double d_seq = obj.total(xa) - obj.total(xb);
    const double d_dir = stochastic_bs_power_direct(ch, cell, psi, xa, sym, beta) -
                         stochastic_bs_power_direct(ch, cell, psi, xb, sym, beta);
    CHECK(diff_close(d_seq, d_dir));
  }
}

TEST_CASE("stochastic objective at L=1 equals the single-cell objective") {
  Rng rng(51);
  ChannelSet ch = oracles::random_channels(rng, 1, 3, 4, 3);
  const SymbolMatrix sym = oracles::random_symbols(rng, 1, 3);
  const std::vector<cplx> psi = oracles::random_phases(rng, 3, 4, 1.0);
  BetaSpec beta;
  const SeqQuadObjective st = build_bs_objective_stochastic(ch, 0, psi, sym, beta);
  const SeqQuadObjective si = build_bs_objective_single(ch, 0, psi, sym);
  const std::vector<cplx> x = oracles::random_phases(rng, 4, 4, 0.5);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(st.term(k, x) == doctest::Approx(si.term(k, x)).epsilon(1e-12));
}

TEST_CASE("IRS-free stochastic objective keeps only direct and beta terms") {
  Rng rng(52);
  const int cells = 2, users = 2, nt = 4;
  ChannelSet ch = oracles::random_channels(rng, cells, users, nt, 3);
  for (cplx& v : ch.bs_irs) v = cplx{};
  for (cplx& v : ch.irs_user) v = cplx{};
  const SymbolMatrix sym = oracles::random_symbols(rng, cells, users);
  BetaSpec beta;
  beta.inter_cell = 0.4;
  // Empty psi and zeroed IRS channels must agree: the IRS enters nowhere.
  const SeqQuadObjective no_psi = build_bs_objective_stochastic(ch, 0, {}, sym, beta);
  const std::vector<cplx> psi = oracles::random_phases(rng, 3, 4, 1.0);
  const SeqQuadObjective with_psi = build_bs_objective_stochastic(ch, 0, psi, sym, beta);
  const std::vector<cplx> x = oracles::random_phases(rng, nt, 4, 1.0);
  for (std::size_t k = 0; k < static_cast<std::size_t>(nt); ++k)
    CHECK(no_psi.term(k, x) == doctest::Approx(with_psi.term(k, x)).epsilon(1e-12));
}

TEST_CASE("term index and prefix bounds are enforced") {
  Rng rng(53);
  ChannelSet ch = oracles::random_channels(rng, 1, 2, 3, 2);
  const SymbolMatrix sym = oracles::random_symbols(rng, 1, 2);
  const SeqQuadObjective obj = build_bs_objective_single(ch, 0, {}, sym);
  const std::vector<cplx> x = oracles::random_phases(rng, 3, 4, 1.0);
  CHECK_THROWS_AS((void)obj.term(3, x), std::invalid_argument);
  CHECK_THROWS_AS((void)obj.term(2, std::span<const cplx>(x.data(), 2)),
                  std::invalid_argument);
}
