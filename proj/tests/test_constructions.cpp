#include "doctest.h"
#include "vecsub/constructions.hpp"
#include "vecsub/sumrules.hpp"

using namespace vecsub;

TEST_CASE("bspline filters") {
  auto b2 = bspline_filter(2);
  CHECK(b2.entry(Ix{-1}, 0, 0) == Rat(1, 4));
  CHECK(b2.entry(Ix{0}, 0, 0) == Rat(1, 2));
  CHECK(b2.entry(Ix{1}, 0, 0) == Rat(1, 4));

  auto b4 = bspline_filter(4);
  CHECK(b4.entry(Ix{-2}, 0, 0) == Rat(1, 16));
  CHECK(b4.entry(Ix{0}, 0, 0) == ratq(6, 16));

  for (int o : {2, 4, 6, 8}) CHECK(filter_sum(bspline_filter(o)).at(0, 0) == Rat(1));
}

TEST_CASE("tensor filter") {
  auto hh = tensor_filter(bspline_filter(2), bspline_filter(2));
  CHECK(hh.entry(Ix{0, 0}, 0, 0) == Rat(1, 4));
  auto b44 = tensor_filter(bspline_filter(4), bspline_filter(4));
  CHECK(b44.entry(Ix{0, 0}, 0, 0) == ratq(36, 256));
  // separable jet
  auto j2 = jet_at_zero(b44, 2);
  auto j1 = jet_at_zero(bspline_filter(4), 2);
  CHECK(j2.scalar(Ix{2, 0}) == j1.scalar(Ix{2}) * j1.scalar(Ix{0}));
}

TEST_CASE("three-direction filter") {
  auto u1 = three_direction_filter(1);
  CHECK(u1.entry(Ix{0, 0}, 0, 0) == ratq(2, 8));
  CHECK(filter_sum(u1).at(0, 0) == Rat(1));
  // D6-symmetric about 0
  SymmetrySpec sym;
  sym.group = builtin_groups().D6;
  sym.centers = {RatVec{Rat(0), Rat(0)}};
  DilationSpec spec(2, 2);
  CHECK(check_symmetry(u1, spec, sym).ok);
  CHECK(check_symmetry(three_direction_filter(2), spec, sym).ok);

  // sr(u_m, 2I_2) = 2m
  CHECK(sum_rule_order(three_direction_filter(1), spec).order == 2);
  CHECK(sum_rule_order(three_direction_filter(2), spec).order == 4);
  CHECK(sum_rule_order(three_direction_filter(3), spec).order == 6);
}

TEST_CASE("balanced vectorization reproduces the printed quincunx masks") {
  auto a4 = balanced_from_scalar(tensor_filter(bspline_filter(4), bspline_filter(4)),
                                 quincunx_matrix());
  CHECK(a4 == fixture("a4").a);
  auto a6 = balanced_from_scalar(tensor_filter(bspline_filter(6), bspline_filter(6)),
                                 quincunx_matrix());
  CHECK(a6 == fixture("a6").a);
}

TEST_CASE("balanced vectorization reproduces the printed sqrt3 masks") {
  auto au2 = balanced_from_scalar(three_direction_filter(2), sqrt3_matrix());
  CHECK(au2 == fixture("au2").a);
  auto au3 = balanced_from_scalar(three_direction_filter(3), sqrt3_matrix());
  CHECK(au3 == fixture("au3").a);
}

TEST_CASE("balanced delta coset selector") {
  auto d = MatrixFilter<Rat>::delta(2, 1);
  auto a = balanced_from_scalar(d, IMat::scale(2, 2));
  // a_{jl}(k) = delta(2k - 2 gamma_j + gamma_l)
  auto gam = gamma_set(IMat::scale(2, 2));
  for (size_t j = 0; j < gam.size(); ++j)
    for (size_t l = 0; l < gam.size(); ++l)
      for (std::int64_t f = 0; f < a.npoints(); ++f) {
        Ix k = a.box.unflat(f);
        Ix arg = 2 * k - 2 * gam[j] + gam[l];
        CHECK(a.entry(k, int(j), int(l)) == (arg.is_zero() ? Rat(1) : Rat(0)));
      }
}

TEST_CASE("balanced matching jet: chat_4 and chat_6 coefficients") {
  auto A4 = tensor_filter(bspline_filter(4), bspline_filter(4));
  auto b4 = balanced_matching_jet(A4, quincunx_matrix(), 4);
  // chat_4 = 1 + (1/12)(xi1^2 + xi2^2) + O(||xi||^4)
  CHECK(b4.c_jet.scalar(Ix{0, 0}) == Rat(1));
  CHECK(taylor_coefficient(b4.c_jet, Ix{2, 0}).real() == doctest::Approx(1.0 / 12));
  CHECK(b4.c_jet.scalar(Ix{2, 0}) == Rat(-1, 6));  // T form of the same value
  CHECK(b4.c_jet.scalar(Ix{0, 2}) == Rat(-1, 6));
  CHECK(b4.c_jet.scalar(Ix{1, 1}) == Rat(0));
  CHECK(b4.c_jet.scalar(Ix{1, 0}) == Rat(0));
  CHECK(b4.c_jet.scalar(Ix{3, 0}) == Rat(0));

  auto A6 = tensor_filter(bspline_filter(6), bspline_filter(6));
  auto b6 = balanced_matching_jet(A6, quincunx_matrix(), 6);
  // chat_6 = 1 + (1/8)(xi1^2+xi2^2) + (11/640) xi1^2 xi2^2
  //            + (31/3840)(xi1^4+xi2^4) + O(||xi||^6)
  CHECK(b6.c_jet.scalar(Ix{2, 0}) == Rat(2) * Rat(-1, 8));
  CHECK(b6.c_jet.scalar(Ix{0, 2}) == Rat(2) * Rat(-1, 8));
  // T_{(2,2)} = (2!2!) * (i^4 coeff) = 4 * 11/640
  CHECK(b6.c_jet.scalar(Ix{2, 2}) == Rat(4) * Rat(11, 640));
  CHECK(b6.c_jet.scalar(Ix{4, 0}) == Rat(24) * Rat(31, 3840));
  CHECK(b6.c_jet.scalar(Ix{0, 4}) == Rat(24) * Rat(31, 3840));
}

TEST_CASE("balanced jet equals the recursion matching jet") {
  DilationSpec spec(2, 2);
  struct Case {
    const char* name;
    MatrixFilter<Rat> A;
    IMat N;
    int order;
  };
  std::vector<Case> cases;
  cases.push_back({"a4", tensor_filter(bspline_filter(4), bspline_filter(4)),
                   quincunx_matrix(), 4});
  cases.push_back({"au2", three_direction_filter(2), sqrt3_matrix(), 4});
  for (auto& c : cases) {
    auto bj = balanced_matching_jet(c.A, c.N, c.order);
    auto mask = balanced_from_scalar(c.A, c.N);
    auto mj = matching_jet(mask, spec, c.order - 1);
    CHECK(jets_equal_mod(bj.jet.jet.truncated(c.order - 1), mj.jet, c.order - 1));
  }
}

TEST_CASE("balanced matching jet requires scalar sum rules") {
  // Haar tensor only has order 1; asking for order 4 must fail
  MatrixFilter<Rat> h(1, 1, 1);
  h.set_entry(Ix{0}, 0, 0, Rat(1, 2));
  h.set_entry(Ix{1}, 0, 0, Rat(1, 2));
  auto H2 = tensor_filter(h, h);
  CHECK_THROWS_AS(balanced_matching_jet(H2, quincunx_matrix(), 4), math_error);
}

TEST_CASE("fixture symmetries") {
  DilationSpec spec(2, 2);
  const auto& g = builtin_groups();
  auto group_by_name = [&](const std::string& n) {
    if (n == "D4") return g.D4;
    if (n == "D6") return g.D6;
    return g.H;
  };
  for (const auto& fx : fixtures()) {
    SymmetrySpec sym;
    sym.group = group_by_name(fx.symmetry_group);
    sym.centers = fx.symmetry_centers;
    auto res = check_symmetry(fx.a, spec, sym);
    CHECK_MESSAGE(res.ok, fx.name);

    // single-entry perturbation at a corner breaks it with a witness (the
    // center entry of a zero-centered block can be orbit-fixed, corners are
    // not)
    MatrixFilter<Rat> broken = fx.a;
    Ix k0 = broken.box.lo;
    broken.add_entry(k0, 0, 0, Rat(1, 1000));
    auto bad = check_symmetry(broken, spec, sym);
    CHECK_MESSAGE(!bad.ok, fx.name);
    CHECK(!bad.structural_incompatible);
    CHECK(bad.witness.has_value());
  }
}

TEST_CASE("structural incompatibility differs from asymmetry") {
  DilationSpec spec(2, 2);
  SymmetrySpec sym;
  sym.group = builtin_groups().D4;
  sym.centers = {RatVec{Rat(1, 3), Rat(0)}, RatVec{Rat(0), Rat(0)}};
  auto res = check_symmetry(fixture("a4").a, spec, sym);
  CHECK(!res.ok);
  CHECK(res.structural_incompatible);
}

TEST_CASE("fixture metadata is re-derived, never trusted") {
  DilationSpec spec(2, 2);
  for (const auto& fx : fixtures())
    CHECK_MESSAGE(sum_rule_order(fx.a, spec).order == fx.claimed_sum_rule_order, fx.name);
}

TEST_CASE("automatic mixing search finds signed permutations") {
  // b = [[s, t], [t, s]] with s even and t odd is {+-1}-symmetric about
  // {0,0} with S_{-1} = diag(1,-1); identity mixing fails
  MatrixFilter<Rat> b(1, 2, 2);
  auto s = bspline_filter(2);
  for (std::int64_t f = 0; f < s.npoints(); ++f) {
    Ix k = s.box.unflat(f);
    b.set_entry(k, 0, 0, s.at_flat(f)[0]);
    b.set_entry(k, 1, 1, s.at_flat(f)[0]);
  }
  b.set_entry(Ix{-1}, 0, 1, Rat(1));
  b.set_entry(Ix{1}, 0, 1, Rat(-1));
  b.set_entry(Ix{-1}, 1, 0, Rat(1));
  b.set_entry(Ix{1}, 1, 0, Rat(-1));

  SymmetrySpec sym;
  IMat one(1), minus(1);
  one.at(0, 0) = 1;
  minus.at(0, 0) = -1;
  sym.group = {one, minus};
  sym.centers = {RatVec{Rat(0)}, RatVec{Rat(0)}};
  DilationSpec spec(2, 1);
  CHECK(!check_symmetry(b, spec, sym).ok);
  CHECK(check_symmetry_auto_mixing(b, spec, sym).ok);
}
