#include "doctest.h"
#include "vecsub/constructions.hpp"
#include "vecsub/hermite.hpp"
#include "vecsub/oracle.hpp"
#include "vecsub/scheme.hpp"

using namespace vecsub;

namespace {

MatrixFilter<Rat> diag_hat_hat() {
  auto hat = bspline_filter(2);
  MatrixFilter<Rat> a(1, 2, 2);
  for (std::int64_t f = 0; f < hat.npoints(); ++f) {
    Ix k = hat.box.unflat(f);
    a.set_entry(k, 0, 0, hat.at_flat(f)[0]);
    a.set_entry(k, 1, 1, hat.at_flat(f)[0]);
  }
  return a;
}

}  // namespace

TEST_CASE("lambda_matching_check on prescribed jets") {
  // upsilon = [1, i xi1, i xi2] with Lambda = {0, e1, e2}
  Jet<Rat> j(2, 1, 3, 1);
  j.coeff[0].at(0, 0) = Rat(1);
  // (i xi)^{e1} in T form: T_{e1} = -1
  j.at(Ix{1, 0}).at(0, 1) = Rat(-1);
  j.at(Ix{0, 1}).at(0, 2) = Rat(-1);
  MatchingJet mj{j, 0, 0, -1};

  HermiteType good({Ix{0, 0}, Ix{1, 0}, Ix{0, 1}});
  auto res = lambda_matching_check(mj, good);
  CHECK(res.ok);
  CHECK(res.scale == Rat(1));

  HermiteType lagrange({Ix{0, 0}, Ix{0, 0}, Ix{0, 0}});
  CHECK(!lambda_matching_check(mj, lagrange).ok);
}

TEST_CASE("Lagrange form is equivalent to equal nonzero constant coordinates") {
  Jet<Rat> j(1, 1, 2, 1);
  j.coeff[0].at(0, 0) = Rat(3);
  j.coeff[0].at(0, 1) = Rat(3);
  MatchingJet mj{j, 0, 0, -1};
  HermiteType lag({Ix{0}, Ix{0}});
  CHECK(lambda_matching_check(mj, lag).ok);
  CHECK(lambda_matching_check(mj, lag).scale == Rat(3));

  j.coeff[0].at(0, 1) = Rat(2);
  MatchingJet mj2{j, 0, 0, -1};
  CHECK(!lambda_matching_check(mj2, lag).ok);
}

TEST_CASE("ex1 matching jet is not of Lagrange type") {
  DilationSpec spec(2, 2);
  auto mj = matching_jet(fixture("ex1").a, spec, 1);
  HermiteType lag({Ix{0, 0}, Ix{0, 0}});
  CHECK(!lambda_matching_check(mj, lag).ok);
}

TEST_CASE("a4 is not a Lagrange scheme in the strict sense") {
  auto a4 = fixture("a4").a;
  HermiteType lag({Ix{0, 0}, Ix{0, 0}});
  auto v = ghsd_convergence_check(a4, lag, 0, 6);
  CHECK(v.kind == GhsdKind::NECESSARY_FAIL);
}

TEST_CASE("diag(hat, hat) with Lambda = {0,0} is inconclusive, not sufficient") {
  // The componentwise limits of this mask differ for generic data, so no
  // single limit function exists, and the filter quantity sm_inf(a) is 0:
  // the generator delta e2 - delta e1 annihilates every admissible matching
  // direction and its difference iterates do not decay. The checker must not
  // report the sufficient conditions as met.
  auto a = diag_hat_hat();
  HermiteType lag({Ix{0}, Ix{0}});
  auto v = ghsd_convergence_check(a, lag, 0, 10);
  CHECK(v.kind == GhsdKind::INCONCLUSIVE);
  CHECK(v.sm_inf_hat == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(v.stability_assumption_flag);
}

TEST_CASE("a genuinely Lagrange mask is SUFFICIENT at m = 0") {
  // a(k) = hat(k) (1/2)[[1,1],[1,1]]: both scheme components average the
  // data, so the limits coincide; the matching filter is chat [1, 1]
  MatrixFilter<Rat> a(1, 2, 2);
  auto hat = bspline_filter(2);
  for (std::int64_t f = 0; f < hat.npoints(); ++f) {
    Ix k = hat.box.unflat(f);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a.set_entry(k, i, j, hat.at_flat(f)[0] / 2);
  }
  HermiteType lag({Ix{0}, Ix{0}});
  auto v = ghsd_convergence_check(a, lag, 0, 10);
  CHECK(v.kind == GhsdKind::SUFFICIENT);
  CHECK(v.sm_inf_hat > 0.75);
}

TEST_CASE("masks without eigenvalue 1 are a necessary failure") {
  MatrixFilter<Rat> a(1, 2, 2);
  a.set_entry(Ix{0}, 0, 0, Rat(1, 3));
  a.set_entry(Ix{0}, 1, 1, Rat(1, 5));
  HermiteType lag({Ix{0}, Ix{0}});
  auto v = ghsd_convergence_check(a, lag, 0, 6);
  CHECK(v.kind == GhsdKind::NECESSARY_FAIL);
}

TEST_CASE("run_hermite components and the run_scheme alignment") {
  auto a = diag_hat_hat();
  HermiteType lag({Ix{0}, Ix{0}});
  MatrixFilter<Rat> v(1, 1, 2);
  v.set_entry(Ix{0}, 0, 0, Rat(1));
  v.set_entry(Ix{0}, 0, 1, Rat(1));
  int n = 4;
  auto comps = run_hermite(a, lag, v, n);
  REQUIRE(comps.size() == 2);
  // both components converge to hat samples
  SplineOracle o(2, 1);
  auto want = oracle_grid(o, n, 2, comps[0].box, Ix{0});
  CHECK(grid_sup_distance(comps[0], want) < 1e-12);
  CHECK(grid_sup_distance(comps[1], want) < 1e-12);

  // alignment with run_scheme: u = delta e_l, mu = nu^l
  DilationSpec s1(2, 1);
  // admissible matching jet for the degenerate mask via the Lambda solve is
  // internal to ghsd_convergence_check; for the alignment test use the
  // prescribed jet directly
  Jet<Rat> j(1, 1, 2, 1);
  j.coeff[0].at(0, 0) = Rat(1);
  j.coeff[0].at(0, 1) = Rat(1);
  // degree-1 coefficients of 1/phihat_hat in both slots (matching filter of
  // hat is even: T_1 = 0)
  MatchingJet mj{j, 0, 0, -1};
  for (int l = 0; l < 2; ++l) {
    auto run =
        run_scheme(a, s1, v, MatrixFilter<Rat>::delta_col(1, 2, l), Ix{0}, n, mj);
    CHECK(grid_sup_distance(run.grid, comps[size_t(l)]) < 1e-12);
  }
}

TEST_CASE("scaled derivative components halve per level before scaling") {
  // factor bookkeeping: with nu^2 = (1), component 2 of run_hermite is
  // 2^n [S^n v] e_2
  auto a = diag_hat_hat();
  HermiteType herm({Ix{0}, Ix{1}});
  MatrixFilter<Rat> v(1, 1, 2);
  v.set_entry(Ix{0}, 0, 0, Rat(1));
  v.set_entry(Ix{0}, 0, 1, Rat(1));
  for (int n : {2, 3}) {
    auto comps = run_hermite(a, herm, v, n);
    DilationSpec s1(2, 1);
    MatrixFilter<CD> vn = v.to_cd();
    for (int i = 0; i < n; ++i) vn = subdivision_apply(a.to_cd(), s1, vn);
    double scale = std::pow(2.0, n);
    for (std::int64_t f = 0; f < vn.npoints(); ++f) {
      Ix k = vn.box.unflat(f);
      CHECK(comps[1].value(k, 0).real() ==
            doctest::Approx(scale * vn.entry(k, 0, 1).real()));
    }
  }
}

TEST_CASE("non-2 dilation is rejected") {
  auto a = diag_hat_hat();
  HermiteType lag({Ix{0}, Ix{0}});
  (void)a;
  (void)lag;
  CHECK_THROWS_AS(HermiteType({Ix{1}, Ix{0}}), math_error);  // nu^1 must be 0
}
