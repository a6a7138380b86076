#include "vecsub/oracle.hpp"

#include <cmath>
#include <functional>

#include "vecsub/linalg.hpp"

namespace vecsub {

Rat bspline_value(int order, const Rat& x) {
  if (order < 1) throw math_error("bspline_value: order >= 1");
  if (order == 1) {
    // half-open indicator of [-1/2, 1/2)
    return (x >= Rat(-1, 2) && x < Rat(1, 2)) ? Rat(1) : Rat(0);
  }
  Rat half(1, 2);
  // B_L(x) = [(x + L/2) B_{L-1}(x+1/2) + (L/2 - x) B_{L-1}(x-1/2)] / (L-1)
  Rat l2 = ratq(order, 2);
  Rat a = (x + l2) * bspline_value(order - 1, x + half);
  Rat b = (l2 - x) * bspline_value(order - 1, x - half);
  return (a + b) / Rat(order - 1);
}

Rat bspline_derivative(int order, const Rat& x, int k) {
  if (k == 0) return bspline_value(order, x);
  if (k > order - 2)
    throw math_error("bspline_derivative: derivative order exceeds smoothness");
  Rat half(1, 2);
  // B_L' = B_{L-1}(.+1/2) - B_{L-1}(.-1/2)
  return bspline_derivative(order - 1, x + half, k - 1) -
         bspline_derivative(order - 1, x - half, k - 1);
}

Rat eval_spline(const SplineOracle& oracle, const RatVec& x, const Ix& mu) {
  if (int(x.size()) != oracle.d) throw math_error("eval_spline: dimension mismatch");
  for (int i = 0; i < oracle.d; ++i)
    if (mu[i] > oracle.order - 2)
      throw math_error("eval_spline: derivative order too high for the spline order");

  if (!oracle.N) {
    Rat v(1);
    for (int i = 0; i < oracle.d; ++i)
      v *= bspline_derivative(oracle.order, x[size_t(i)], int(mu[i]));
    return v;
  }
  // d^mu [B(N x - gamma)]: expand each d/dx_i = sum_j N_{ji} d_j recursively;
  // terms is a map nu -> coefficient with |nu| = |mu|
  const IMat& N = *oracle.N;
  std::vector<std::pair<Ix, Rat>> terms{{Ix(oracle.d), Rat(1)}};
  for (int axis = 0; axis < oracle.d; ++axis)
    for (std::int64_t rep = 0; rep < mu[axis]; ++rep) {
      std::vector<std::pair<Ix, Rat>> next;
      for (auto& [nu, c] : terms)
        for (int j = 0; j < oracle.d; ++j) {
          if (N.at(j, axis) == 0) continue;
          Ix nn = nu;
          nn[j] += 1;
          Rat cc = c * Rat(N.at(j, axis));
          bool merged = false;
          for (auto& [en, ec] : next)
            if (en == nn) {
              ec += cc;
              merged = true;
              break;
            }
          if (!merged) next.emplace_back(nn, cc);
        }
      terms = std::move(next);
    }
  RatVec y(size_t(oracle.d), Rat(0));
  for (int i = 0; i < oracle.d; ++i) {
    Rat s(0);
    for (int j = 0; j < oracle.d; ++j) s += Rat(N.at(i, j)) * x[size_t(j)];
    y[size_t(i)] = s - Rat(oracle.gamma[i]);
  }
  Rat total(0);
  for (auto& [nu, c] : terms) {
    Rat v(1);
    for (int i = 0; i < oracle.d; ++i)
      v *= bspline_derivative(oracle.order, y[size_t(i)], int(nu[i]));
    total += c * v;
  }
  return total;
}

Box oracle_support_box(const SplineOracle& oracle, int level, int m) {
  // support of B(N x - gamma): x with N x - gamma in [-L/2, L/2]^d
  std::int64_t scale = 1;
  for (int i = 0; i < level; ++i) scale *= m;
  Rat l2 = ratq(oracle.order, 2);
  if (!oracle.N) {
    Ix lo(oracle.d), hi(oracle.d);
    for (int i = 0; i < oracle.d; ++i) {
      Rat a = Rat(-l2 * scale), b = Rat(l2 * scale);
      lo[i] = std::int64_t(std::floor(a.get_d())) - 1;
      hi[i] = std::int64_t(std::ceil(b.get_d())) + 1;
    }
    return Box(lo, hi);
  }
  // bound via column sums of |N^{-1}|
  Mat<Rat> Ninv(oracle.d, oracle.d);
  {
    Mat<Rat> M(oracle.d, oracle.d);
    for (int i = 0; i < oracle.d; ++i)
      for (int j = 0; j < oracle.d; ++j) M.at(i, j) = Rat(oracle.N->at(i, j));
    auto inv = invert_exact(M);
    if (!inv) throw math_error("oracle_support_box: singular N");
    Ninv = *inv;
  }
  Ix lo(oracle.d), hi(oracle.d);
  for (int i = 0; i < oracle.d; ++i) {
    Rat reach(0), center(0);
    for (int j = 0; j < oracle.d; ++j) {
      reach += abs(Ninv.at(i, j)) * l2;
      center += Ninv.at(i, j) * Rat(oracle.gamma[j]);
    }
    lo[i] = std::int64_t(std::floor(Rat((center - reach) * scale).get_d())) - 1;
    hi[i] = std::int64_t(std::ceil(Rat((center + reach) * scale).get_d())) + 1;
  }
  return Box(lo, hi);
}

Grid<Rat> oracle_grid_exact(const SplineOracle& oracle, int level, int m, const Box& box,
                            const Ix& mu) {
  Grid<Rat> g(level, m, oracle.d, 1, box);
  std::int64_t scale = 1;
  for (int i = 0; i < level; ++i) scale *= m;
  for (std::int64_t f = 0; f < box.volume(); ++f) {
    Ix k = box.unflat(f);
    RatVec x;
    for (int i = 0; i < oracle.d; ++i) x.push_back(ratq(k[i], scale));
    g.at(f)[0] = eval_spline(oracle, x, mu);
  }
  return g;
}

Grid<CD> oracle_grid(const SplineOracle& oracle, int level, int m, const Box& box, const Ix& mu) {
  return oracle_grid_exact(oracle, level, m, box, mu).to_cd();
}

MatrixFilter<Rat> oracle_integer_samples(int order, const IMat& N, const std::vector<Ix>& gammas,
                                         const Ix& mu) {
  const int d = N.n;
  const int r = int(gammas.size());
  MatrixFilter<Rat> out(d, r, 1);
  for (int l = 0; l < r; ++l) {
    SplineOracle o(order, d, N, gammas[size_t(l)]);
    Box b = oracle_support_box(o, 0, 2);
    for (std::int64_t f = 0; f < b.volume(); ++f) {
      Ix k = b.unflat(f);
      RatVec x;
      for (int i = 0; i < d; ++i) x.emplace_back(k[i]);
      Rat v = eval_spline(o, x, mu);
      if (sgn(v) != 0) out.set_entry(k, l, 0, v);
    }
  }
  out.trim();
  return out;
}

}  // namespace vecsub
