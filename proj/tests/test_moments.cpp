#include <random>

#include "doctest.h"
#include "vecsub/constructions.hpp"
#include "vecsub/moments.hpp"

using namespace vecsub;

namespace {

MatrixFilter<Rat> random_filter(std::mt19937_64& rng, int d, int r, int s, int reach) {
  MatrixFilter<Rat> f(d, r, s);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), pos(-reach, reach);
  for (int t = 0; t < 5; ++t) {
    Ix k(d);
    for (int i = 0; i < d; ++i) k[i] = pos(rng);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j) f.add_entry(k, i, j, ratq(num(rng), den(rng)));
  }
  f.trim();
  return f;
}

}  // namespace

TEST_CASE("jet_at_zero basics") {
  auto d1 = MatrixFilter<Rat>::delta(1, 1);
  auto jd = jet_at_zero(d1, 3);
  CHECK(jd.scalar(Ix{0}) == Rat(1));
  CHECK(jd.scalar(Ix{1}) == Rat(0));
  CHECK(jd.scalar(Ix{3}) == Rat(0));

  auto hat = bspline_filter(2);
  auto jh = jet_at_zero(hat, 2);
  CHECK(jh.scalar(Ix{0}) == Rat(1));
  CHECK(jh.scalar(Ix{1}) == Rat(0));
  CHECK(jh.scalar(Ix{2}) == Rat(1, 2));

  auto dx = difference_delta<Rat>(2, Ix{1, 0});
  auto jx = jet_at_zero(dx, 1);
  CHECK(jx.scalar(Ix{0, 0}) == Rat(0));
  CHECK(jx.scalar(Ix{1, 0}) == Rat(-1));
}

TEST_CASE("jet_product is the jet of the convolution (Leibniz)") {
  auto hat = bspline_filter(2);
  auto jh = jet_at_zero(hat, 2);
  auto jp = jet_product(jh, jh);
  CHECK(jp.scalar(Ix{2}) == Rat(1));  // 1*(1/2) + 2*0*0 + (1/2)*1

  std::mt19937_64 rng(19);
  for (int t = 0; t < 8; ++t) {
    auto v = random_filter(rng, 2, 2, 2, 2);
    auto w = random_filter(rng, 2, 2, 1, 2);
    auto lhs = jet_at_zero(convolve(v, w), 6);
    auto rhs = jet_product(jet_at_zero(v, 6), jet_at_zero(w, 6));
    CHECK(jets_equal_mod(lhs, rhs, 6));
  }
}

TEST_CASE("jet_scale_argument") {
  auto hat = bspline_filter(2);
  auto j = jet_at_zero(hat, 3);
  auto j1 = jet_scale_argument(j, 1);
  CHECK(jets_equal_mod(j, j1, 3));
  auto j2 = jet_scale_argument(j, 2);
  CHECK(j2.scalar(Ix{2}) == Rat(2));  // 4 * 1/2
  CHECK(jet_scale_argument(jet_at_zero(bspline_filter(4), 3), 2).scalar(Ix{3}) ==
        Rat(8) * jet_at_zero(bspline_filter(4), 3).scalar(Ix{3}));
}

TEST_CASE("character jets") {
  auto j0 = character_jet(RatVec{Rat(0), Rat(0)}, 2);
  CHECK(j0.scalar(Ix{0, 0}) == Rat(1));
  CHECK(j0.scalar(Ix{1, 1}) == Rat(0));

  auto j1 = character_jet(RatVec{Rat(1), Rat(0)}, 2);
  CHECK(j1.scalar(Ix{2, 0}) == Rat(1));

  auto jh = character_jet(RatVec{Rat(1, 2), Rat(1, 2)}, 2);
  CHECK(jh.scalar(Ix{1, 1}) == Rat(1, 4));

  // character times partner: jet of (shifted delta * w) = char-jet (x) jet(w)
  std::mt19937_64 rng(5);
  auto w = random_filter(rng, 2, 1, 1, 2);
  MatrixFilter<Rat> sh(2, 1, 1);
  sh.set_entry(Ix{1, 0}, 0, 0, Rat(1));
  auto lhs = jet_at_zero(convolve(sh, w), 4);
  auto rhs = jet_product(character_jet(RatVec{Rat(1), Rat(0)}, 4), jet_at_zero(w, 4));
  CHECK(jets_equal_mod(lhs, rhs, 4));
}

TEST_CASE("jet_at_frequency") {
  // omega = 0 matches jet_at_zero
  auto hat = bspline_filter(2);
  auto jf = jet_at_frequency(hat, RatVec{Rat(0)}, 3);
  auto jz = jet_at_zero(hat, 3).to_cd();
  CHECK(jets_equal_mod(jf, jz, 3, 1e-12));

  // Haar at omega = 1/2: hat value 0
  MatrixFilter<Rat> h(1, 1, 1);
  h.set_entry(Ix{0}, 0, 0, Rat(1, 2));
  h.set_entry(Ix{1}, 0, 0, Rat(1, 2));
  auto jh = jet_at_frequency(h, RatVec{Rat(1, 2)}, 1);
  CHECK(std::abs(jh.scalar(Ix{0})) < 1e-15);

  // hat at omega = 1/2: first derivative vanishes by symmetry
  auto jhat = jet_at_frequency(hat, RatVec{Rat(1, 2)}, 1);
  CHECK(std::abs(jhat.scalar(Ix{1})) < 1e-15);

  // generic float path at omega = 1/3: hat value 1/2 + (1/2)cos(2 pi/3) = 1/4
  auto third = jet_at_frequency(hat, RatVec{Rat(1, 3)}, 2);
  CHECK(third.scalar(Ix{0}).real() == doctest::Approx(0.25));
  CHECK(std::abs(third.scalar(Ix{0}).imag()) < 1e-15);
}

TEST_CASE("jets_equal_mod orders") {
  auto hat = bspline_filter(2);
  auto jh = jet_at_zero(hat, 2);
  auto jd = jet_at_zero(MatrixFilter<Rat>::delta(1, 1), 2);
  CHECK(jets_equal_mod(jh, jd, 0));
  CHECK(!jets_equal_mod(jh, jd, 2));
}

TEST_CASE("jet reciprocal and division") {
  auto hat = bspline_filter(2);
  auto j = jet_at_zero(hat, 4);
  auto r = jet_reciprocal(j);
  auto p = jet_product(j, r);
  CHECK(p.scalar(Ix{0}) == Rat(1));
  for (int q = 1; q <= 4; ++q) CHECK(p.scalar(Ix{q}) == Rat(0));
}

TEST_CASE("coset reconstruction of jets") {
  // T_mu(a) = sum_gamma sum_{nu<=mu} binom(mu,nu) gamma^nu m^{|mu-nu|}
  //           T_{mu-nu}(a^{[gamma]})
  std::mt19937_64 rng(23);
  DilationSpec spec(2, 2);
  auto a = random_filter(rng, 2, 2, 2, 3);
  auto ja = jet_at_zero(a, 4);
  auto parts = coset_split(a, spec);
  auto reps = coset_reps(spec);
  Jet<Rat> acc(2, 2, 2, 4);
  for (size_t gi = 0; gi < reps.size(); ++gi) {
    RatVec gv;
    for (int i = 0; i < 2; ++i) gv.emplace_back(reps[gi][i]);
    auto piece = jet_scale_argument(jet_at_zero(parts[gi], 4), spec.m);
    acc = acc + jet_product(character_jet(gv, 4), piece);
  }
  CHECK(jets_equal_mod(ja, acc, 4));
}

TEST_CASE("taylor coefficients reinstate the i powers") {
  // chat = 1 + (1/12)(xi1^2+xi2^2) has T_{(2,0)} = -1/6
  Jet<Rat> c(2, 1, 1, 2);
  c.coeff[0].at(0, 0) = Rat(1);
  c.at(Ix{2, 0}).at(0, 0) = Rat(-1, 6);
  c.at(Ix{0, 2}).at(0, 0) = Rat(-1, 6);
  CD t = taylor_coefficient(c, Ix{2, 0});
  CHECK(t.real() == doctest::Approx(1.0 / 12));
  CHECK(t.imag() == doctest::Approx(0.0));
}

TEST_CASE("frequency-jet float path matches the exact path on all fixtures") {
  for (const auto& fx : fixtures()) {
    auto exact = jet_at_zero(fx.a, 4).to_cd();
    auto freq = jet_at_frequency(fx.a, RatVec{Rat(0), Rat(0)}, 4);
    CHECK(jets_equal_mod(freq, exact, 4, 1e-12));
  }
}
