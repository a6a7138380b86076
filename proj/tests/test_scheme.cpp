#include "doctest.h"
#include "vecsub/constructions.hpp"
#include "vecsub/oracle.hpp"
#include "vecsub/scheme.hpp"

using namespace vecsub;

namespace {

MatrixFilter<Rat> haar1d() {
  MatrixFilter<Rat> h(1, 1, 1);
  h.set_entry(Ix{0}, 0, 0, Rat(1, 2));
  h.set_entry(Ix{1}, 0, 0, Rat(1, 2));
  return h;
}

}  // namespace

TEST_CASE("phi integer values: hat, Haar, balanced a4") {
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mj = matching_jet(hat, s1, 1);
  auto g = phi_integer_values(hat, s1, mj);
  CHECK(g.value(Ix{0}, 0) == Rat(1));
  CHECK(g.value(Ix{-1}, 0) == Rat(0));
  CHECK(g.value(Ix{1}, 0) == Rat(0));

  auto h = haar1d();
  auto mjh = matching_jet(h, s1, 0);
  auto gh = phi_integer_values(h, s1, mjh);
  CHECK(gh.value(Ix{0}, 0) == Rat(1));  // half-open convention

  DilationSpec s2(2, 2);
  auto a4 = fixture("a4").a;
  auto mj4 = matching_jet(a4, s2, 3);
  auto g4 = phi_integer_values(a4, s2, mj4);
  auto want = oracle_integer_samples(4, quincunx_matrix(), {Ix{0, 0}, Ix{1, 0}}, Ix{0, 0});
  for (std::int64_t f = 0; f < g4.box.volume(); ++f) {
    Ix k = g4.box.unflat(f);
    for (int c = 0; c < 2; ++c) CHECK(g4.value(k, c) == want.entry(k, c, 0));
  }
}

TEST_CASE("phi integer values: cubic B-spline matches the oracle exactly") {
  DilationSpec s1(2, 1);
  auto b4 = bspline_filter(4);
  auto mj = matching_jet(b4, s1, 3);
  auto g = phi_integer_values(b4, s1, mj);
  CHECK(g.value(Ix{0}, 0) == Rat(2, 3));
  CHECK(g.value(Ix{-1}, 0) == Rat(1, 6));
  CHECK(g.value(Ix{1}, 0) == Rat(1, 6));
}

TEST_CASE("refine: hat reproduces its own samples at every level") {
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mj = matching_jet(hat, s1, 1);
  Grid<Rat> g = phi_integer_values(hat, s1, mj);
  SplineOracle o(2, 1);
  for (int n = 1; n <= 4; ++n) {
    g = refine(hat, s1, g);
    auto want = oracle_grid_exact(o, n, 2, g.box, Ix{0});
    for (std::int64_t f = 0; f < g.box.volume(); ++f)
      CHECK(g.at(f)[0] == want.at(f)[0]);
  }
}

TEST_CASE("refine^n of the delta-seeded grid equals S^n(delta I_r) columns") {
  DilationSpec spec(2, 2);
  auto a4 = fixture("a4").a;
  for (int col = 0; col < 2; ++col) {
    Grid<Rat> g(0, 2, 2, 2, Box(Ix{0, 0}, Ix{0, 0}));
    g.set(Ix{0, 0}, col, Rat(1));
    auto Sn = MatrixFilter<Rat>::delta(2, 2);
    for (int n = 1; n <= 3; ++n) {
      g = refine(a4, spec, g);
      Sn = subdivision_apply(a4, spec, Sn);
      for (std::int64_t f = 0; f < g.box.volume(); ++f) {
        Ix k = g.box.unflat(f);
        for (int i = 0; i < 2; ++i) CHECK(g.value(k, i) == Sn.entry(k, i, col));
      }
    }
  }
}

TEST_CASE("a4 refine grids match the spline oracle to roundoff") {
  DilationSpec spec(2, 2);
  auto a4 = fixture("a4").a;
  auto mj = matching_jet(a4, spec, 3);
  Grid<Rat> g = phi_integer_values(a4, spec, mj);
  for (int n = 1; n <= 3; ++n) g = refine(a4, spec, g);
  auto gc = g.to_cd();
  double err = 0;
  SplineOracle o1(4, 2, quincunx_matrix(), Ix{0, 0});
  SplineOracle o2(4, 2, quincunx_matrix(), Ix{1, 0});
  auto w1 = oracle_grid(o1, 3, 2, g.box, Ix{0, 0});
  auto w2 = oracle_grid(o2, 3, 2, g.box, Ix{0, 0});
  for (std::int64_t f = 0; f < g.box.volume(); ++f) {
    err = std::max(err, std::abs(gc.at(f)[0] - w1.at(f)[0]));
    err = std::max(err, std::abs(gc.at(f)[1] - w2.at(f)[0]));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("run_scheme on the hat mask reproduces hat samples with beta 1") {
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mj = matching_jet(hat, s1, 1);
  auto v = MatrixFilter<Rat>::delta_row(1, 1, 0);
  auto u = MatrixFilter<Rat>::delta_col(1, 1, 0);
  auto run = run_scheme(hat, s1, v, u, Ix{0}, 5, mj);
  CHECK(run.beta == Rat(1));
  SplineOracle o(2, 1);
  auto want = oracle_grid(o, 5, 2, run.grid.box, Ix{0});
  CHECK(grid_sup_distance(run.grid, want) < 1e-14);
}

TEST_CASE("run_scheme membership failure names the violated order") {
  DilationSpec spec(2, 2);
  auto a4 = fixture("a4").a;
  auto mj = matching_jet(a4, spec, 3);
  auto v = MatrixFilter<Rat>::delta_row(2, 2, 0);
  auto u = MatrixFilter<Rat>::delta_col(2, 2, 0);
  CHECK_THROWS_WITH_AS(run_scheme(a4, spec, v, u, Ix{1, 0}, 2, mj),
                       doctest::Contains("violated"), math_error);
}

TEST_CASE("shift covariance of run_scheme") {
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mj = matching_jet(hat, s1, 1);
  auto v = MatrixFilter<Rat>::delta_row(1, 1, 0);
  auto u = MatrixFilter<Rat>::delta_col(1, 1, 0);
  int n = 4;
  auto base = run_scheme(hat, s1, v, u, Ix{0}, n, mj);
  auto shifted = run_scheme(hat, s1, shift(v, Ix{1}), u, Ix{0}, n, mj);
  // shifted grid = base translated by m^n
  for (std::int64_t f = 0; f < base.grid.box.volume(); ++f) {
    Ix k = base.grid.box.unflat(f);
    CHECK(shifted.grid.value(k + Ix{16}, 0) == base.grid.value(k, 0));
  }
}

TEST_CASE("filtration consistency: u*c converges to chat(0) times the u limit") {
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mj = matching_jet(hat, s1, 1);
  auto v = MatrixFilter<Rat>::delta_row(1, 1, 0);
  auto u = MatrixFilter<Rat>::delta_col(1, 1, 0);
  MatrixFilter<Rat> c(1, 1, 1);
  c.set_entry(Ix{0}, 0, 0, Rat(1, 3));
  c.set_entry(Ix{1}, 0, 0, Rat(1, 4));
  auto uc = convolve(u, c);
  int n = 6;
  auto run_u = run_scheme(hat, s1, v, u, Ix{0}, n, mj);
  auto run_uc = run_scheme(hat, s1, v, uc, Ix{0}, n, mj);
  // [S^n v] * (u*c) == ([S^n v] * u) * c pointwise
  auto conv = convolve(run_u.grid.as_filter(), c.to_cd());
  auto lhs = Grid<CD>::from_filter(conv, n, 2);
  CHECK(grid_sup_distance(lhs, run_uc.grid) < 1e-8);
}

TEST_CASE("integer derivative samples restrict to m^n-divisible indices") {
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mj = matching_jet(hat, s1, 1);
  Grid<Rat> g = phi_integer_values(hat, s1, mj);
  auto w0 = integer_derivative_samples(g);
  CHECK(w0 == MatrixFilter<Rat>::delta(1, 1));  // phi(0)=1, phi(+-1)=0

  Grid<Rat> g2 = refine(hat, s1, refine(hat, s1, g));
  auto w2 = integer_derivative_samples(g2);
  CHECK(w2 == MatrixFilter<Rat>::delta(1, 1));
}

TEST_CASE("drv indices") {
  DilationSpec spec(2, 2);
  auto a4 = fixture("a4").a;
  auto mj = matching_jet(a4, spec, 5);

  auto d0 = drv_index(mj, MatrixFilter<Rat>::delta_col(2, 2, 0), Ix{0, 0});
  CHECK(!d0.unbounded);
  CHECK(d0.value == 2);  // chat_4 deviates at degree 2

  // scalar mask: u = nabla delta has drv = |mu| + 1
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mjh = matching_jet(hat, s1, 3);
  auto du = drv_index(mjh, difference(Ix{1}, MatrixFilter<Rat>::delta(1, 1)), Ix{1});
  CHECK(du.value == 2);
}

TEST_CASE("the moment identity for oracle derivative integer samples") {
  // T_nu(upsilon * w_mu) = (-1)^{|mu|} mu! delta(nu - mu) for |nu| <= 3,
  // with w_mu the exact oracle samples of d^mu phi at the integers
  DilationSpec spec(2, 2);
  auto a4 = fixture("a4").a;
  auto mj = matching_jet(a4, spec, 3);
  std::vector<Ix> gammas = {Ix{0, 0}, Ix{1, 0}};
  for (const Ix& mu : multiindices_upto(2, 2)) {
    auto w = oracle_integer_samples(4, quincunx_matrix(), gammas, mu);
    auto p = jet_product(mj.jet, jet_at_zero(w, 3));
    for (const Ix& nu : multiindices_upto(2, 3)) {
      Rat want(0);
      if (nu == mu) {
        want = Rat(factorial_mi(mu));
        if (mu.order() % 2 == 1) want = -want;
      }
      CHECK(p.scalar(nu) == want);
    }
  }
}

TEST_CASE("measure_rate on the hat mask reports roundoff errors") {
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mj = matching_jet(hat, s1, 1);
  auto v = MatrixFilter<Rat>::delta_row(1, 1, 0);
  auto u = MatrixFilter<Rat>::delta_col(1, 1, 0);
  SplineOracle o(2, 1);
  auto oracle = [&](int level) {
    return oracle_grid(o, level, 2, oracle_support_box(o, level, 2), Ix{0});
  };
  auto rep = measure_rate(hat, s1, v, u, Ix{0}, oracle, 2, 5, mj, 1.0);
  CHECK(rep.errors_at_roundoff);
}
