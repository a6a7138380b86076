#include <random>

#include "doctest.h"
#include "vecsub/constructions.hpp"
#include "vecsub/scheme.hpp"
#include "vecsub/sumrules.hpp"

using namespace vecsub;

namespace {

// test-only 1-D power-series oracle for (sin(x/2)/(x/2))^{2m} and its
// reciprocal, independent of the jet machinery
std::vector<Rat> phihat_series(int order2m, int maxdeg) {
  // sin(x)/x = sum (-1)^k x^{2k}/(2k+1)!
  std::vector<Rat> sinc(size_t(maxdeg + 1), Rat(0));
  for (int k = 0; 2 * k <= maxdeg; ++k) {
    Rat f(1);
    for (int t = 2; t <= 2 * k + 1; ++t) f *= t;
    sinc[size_t(2 * k)] = (k % 2 ? Rat(-1) : Rat(1)) / f;
  }
  for (int d0 = 0; d0 <= maxdeg; ++d0) sinc[size_t(d0)] /= int_pow(Rat(2), d0);
  std::vector<Rat> acc(size_t(maxdeg + 1), Rat(0));
  acc[0] = Rat(1);
  for (int rep = 0; rep < order2m; ++rep) {
    std::vector<Rat> nxt(size_t(maxdeg + 1), Rat(0));
    for (int i = 0; i <= maxdeg; ++i)
      for (int j = 0; i + j <= maxdeg; ++j) nxt[size_t(i + j)] += acc[size_t(i)] * sinc[size_t(j)];
    acc = std::move(nxt);
  }
  return acc;
}

std::vector<Rat> series_reciprocal(const std::vector<Rat>& p) {
  std::vector<Rat> q(p.size(), Rat(0));
  q[0] = Rat(1) / p[0];
  for (size_t n = 1; n < p.size(); ++n) {
    Rat acc(0);
    for (size_t k = 1; k <= n; ++k) acc += p[k] * q[n - k];
    q[n] = -acc / p[0];
  }
  return q;
}

}  // namespace

TEST_CASE("eigen condition reports") {
  DilationSpec spec(2, 2);
  auto hat2 = tensor_filter(bspline_filter(2), bspline_filter(2));
  auto er = check_eigen_condition(hat2, spec, 1);
  CHECK(er.simple_one);
  CHECK(er.max_other_modulus == 0.0);

  auto d2 = MatrixFilter<Rat>::delta(2, 2);
  auto er2 = check_eigen_condition(d2, spec, 0);
  CHECK(!er2.simple_one);
  CHECK(er2.one_multiplicity == 2);

  auto erx1 = check_eigen_condition(fixture("ex1").a, spec, 3);
  CHECK(erx1.simple_one);
  CHECK(erx1.condition_met);
}

TEST_CASE("matching jet of the scalar B-spline masks equals the 1/phihat series") {
  DilationSpec spec(2, 1);
  for (int order2m : {2, 4}) {
    auto a = bspline_filter(order2m);
    auto mj = matching_jet(a, spec, 6);
    auto recip = series_reciprocal(phihat_series(order2m, 6));
    // T_q = i^q d^q(1/phihat)(0) = i^q q! recip[q]; real even series
    for (int q = 0; q <= 6; ++q) {
      Rat fact(1);
      for (int t = 2; t <= q; ++t) fact *= t;
      Rat want = recip[size_t(q)] * fact;
      if (q % 2 == 1) {
        CHECK(mj.jet.scalar(Ix{q}) == Rat(0));
      } else {
        if (q % 4 == 2) want = -want;  // i^q = -1 for q = 2 mod 4
        CHECK(mj.jet.scalar(Ix{q}) == want);
      }
    }
  }
  // frozen spot values for the order-4 mask
  auto mj4 = matching_jet(bspline_filter(4), spec, 4);
  CHECK(mj4.jet.scalar(Ix{2}) == Rat(-1, 3));
  CHECK(mj4.jet.scalar(Ix{4}) == Rat(11, 30));
}

TEST_CASE("matching jet errors") {
  DilationSpec spec(2, 1);
  auto d2 = MatrixFilter<Rat>::delta(1, 2);
  CHECK_THROWS_WITH_AS(matching_jet(d2, spec, 1), doctest::Contains("simple eigenvalue"),
                       math_error);

  MatrixFilter<Rat> w(1, 2, 2);
  w.set_entry(Ix{0}, 0, 0, Rat(1));
  w.set_entry(Ix{0}, 1, 1, Rat(1, 2));
  CHECK_THROWS_WITH_AS(matching_jet(w, spec, 1),
                       doctest::Contains("eigen condition violated at degree 1"), math_error);
  CHECK_NOTHROW(matching_jet(w, spec, 0));
}

TEST_CASE("fixture sum-rule orders match the published values") {
  DilationSpec spec(2, 2);
  std::vector<std::pair<std::string, int>> want = {
      {"ex1", 4}, {"ex2", 6}, {"a4", 4}, {"a6", 6}, {"au2", 4}, {"au3", 6}};
  for (auto& [name, order] : want) {
    auto res = sum_rule_order(fixture(name).a, spec);
    CHECK_MESSAGE(res.order == order, name);
  }
}

TEST_CASE("ex1 and ex2 matching jets are [1, 0] through their order") {
  DilationSpec spec(2, 2);
  for (const char* name : {"ex1", "ex2"}) {
    auto res = sum_rule_order(fixture(name).a, spec);
    CHECK(res.jet.jet.coeff[0].at(0, 0) == Rat(1));
    for (const Ix& mu : multiindices_upto(2, res.order - 1)) {
      CHECK(res.jet.jet.at(mu).at(0, 1) == Rat(0));
      if (!mu.is_zero()) CHECK(res.jet.jet.at(mu).at(0, 0) == Rat(0));
    }
  }
}

TEST_CASE("check_sum_rules boundaries") {
  DilationSpec spec(2, 2);
  auto ex1 = fixture("ex1").a;
  auto mj = matching_jet(ex1, spec, 5);
  CHECK(check_sum_rules(ex1, spec, mj, 3).ok);
  auto fail4 = check_sum_rules(ex1, spec, mj, 4);
  CHECK(!fail4.ok);
  CHECK(fail4.first_failure.has_value());

  DilationSpec s1(2, 1);
  MatrixFilter<Rat> h(1, 1, 1);
  h.set_entry(Ix{0}, 0, 0, Rat(1, 2));
  h.set_entry(Ix{1}, 0, 0, Rat(1, 2));
  auto hj = matching_jet(h, s1, 2);
  CHECK(check_sum_rules(h, s1, hj, 0).ok);
  CHECK(!check_sum_rules(h, s1, hj, 1).ok);
}

TEST_CASE("recursion output satisfies the eigenvector relation exactly") {
  DilationSpec spec(2, 2);
  for (const char* name : {"ex1", "a4", "au2"}) {
    const auto& a = fixture(name).a;
    auto mj = matching_jet(a, spec, 1);
    Mat<Rat> lhs = mj.jet.coeff[0] * filter_sum(a);
    CHECK(lhs == mj.jet.coeff[0]);
  }
}

TEST_CASE("coset and omega sum-rule forms agree on fixtures and random masks") {
  DilationSpec spec(2, 2);
  for (const auto& fx : fixtures()) {
    auto mj = matching_jet(fx.a, spec, fx.claimed_sum_rule_order);
    for (int m = 0; m < fx.claimed_sum_rule_order; ++m) {
      auto c = check_sum_rules(fx.a, spec, mj, m);
      CHECK(c.ok == c.omega_form_ok);
    }
  }
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), pos(-2, 2), rr(1, 3);
  for (int t = 0; t < 50; ++t) {
    int r = rr(rng);
    int d = 1 + (t % 2);
    DilationSpec sp(2, d);
    MatrixFilter<Rat> a(d, r, r);
    for (int e = 0; e < 6; ++e) {
      Ix k(d);
      for (int i = 0; i < d; ++i) k[i] = pos(rng);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) a.add_entry(k, i, j, ratq(num(rng), den(rng)));
    }
    // force ahat(0) = diag(1, small, ...) so a matching jet exists; the
    // small eigenvalues avoid every 2^{-q}
    Mat<Rat> target(r, r);
    target.at(0, 0) = Rat(1);
    for (int i = 1; i < r; ++i) target.at(i, i) = ratq(1, 2 * i + 3);
    Mat<Rat> fix0 = a.value(Ix(d)) - (filter_sum(a) - target);
    a.set(Ix(d), fix0);
    auto mj = matching_jet(a, sp, 2);
    for (int m = 0; m <= 2; ++m) {
      auto c = check_sum_rules(a, sp, mj, m);
      CHECK(c.ok == c.omega_form_ok);
    }
  }
}

TEST_CASE("matching jets are projectively unique under coordinate permutation") {
  DilationSpec spec(2, 2);
  auto a4 = fixture("a4").a;
  auto mj = matching_jet(a4, spec, 3);
  MatrixFilter<Rat> sw(2, 2, 2);
  sw.set_entry(Ix{0, 0}, 0, 1, Rat(1));
  sw.set_entry(Ix{0, 0}, 1, 0, Rat(1));
  auto as = convolve(sw, convolve(a4, sw));
  auto ms = matching_jet(as, spec, 3);
  // upsilon_swapped = c * upsilon . P for one constant c, fixed at degree 0
  Rat c = ms.jet.coeff[0].at(0, 0) / mj.jet.coeff[0].at(0, 1);
  CHECK(sgn(c) != 0);
  for (const Ix& mu : multiindices_upto(2, 3)) {
    CHECK(ms.jet.at(mu).at(0, 0) == c * mj.jet.at(mu).at(0, 1));
    CHECK(ms.jet.at(mu).at(0, 1) == c * mj.jet.at(mu).at(0, 0));
  }
}

TEST_CASE("degenerate sum_rule_order inputs") {
  DilationSpec spec(2, 1);
  auto d2 = MatrixFilter<Rat>::delta(1, 2);
  CHECK_THROWS_AS(sum_rule_order(d2, spec), math_error);
}

TEST_CASE("phi admissibility via Riemann sums: hat grid") {
  DilationSpec s1(2, 1);
  auto hat = bspline_filter(2);
  auto mj = matching_jet(hat, s1, 1);
  Grid<Rat> g = phi_integer_values(hat, s1, mj);
  for (int n = 0; n < 8; ++n) g = refine(hat, s1, g);
  auto rep = verify_phi_admissibility(g.to_cd(), mj, 0, {Ix{0}, Ix{1}}, 1e-6);
  CHECK(!rep.grid_coarse);
  CHECK(rep.within(1e-6));
}

TEST_CASE("phi admissibility for the balanced a4 grid") {
  DilationSpec s2(2, 2);
  auto a4 = fixture("a4").a;
  auto mj = matching_jet(a4, s2, 3);
  Grid<Rat> gr = phi_integer_values(a4, s2, mj);
  Grid<CD> g = gr.to_cd();
  auto acd = a4.to_cd();
  for (int n = 0; n < 7; ++n) g = refine(acd, s2, g);
  std::vector<Ix> freqs = {Ix{0, 0}, Ix{1, 0}, Ix{-1, 0}, Ix{0, 1}, Ix{0, -1}};
  auto rep = verify_phi_admissibility(g, mj, 3, freqs, 1e-4);
  CHECK(rep.within(1e-4));
}
