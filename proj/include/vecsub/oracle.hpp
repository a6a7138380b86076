#pragma once

#include <optional>

#include "vecsub/grid.hpp"
#include "vecsub/lattice.hpp"

namespace vecsub {

/// Exact evaluation of the centred cardinal B-spline B_L (order L, support
/// [-L/2, L/2]) and its derivatives at rational points, by the uniform
/// Cox-de-Boor recursion. Independent of every scheme/cascade code path.
Rat bspline_value(int order, const Rat& x);
Rat bspline_derivative(int order, const Rat& x, int k);

/// Tensor centred B-spline, optionally composed with x -> N x - gamma
/// (the balanced-construction components phi_l = B(N x - gamma_l)).
struct SplineOracle {
  int order = 2;  // per-axis spline order (2m)
  int d = 1;
  std::optional<IMat> N;
  Ix gamma;  // used only with N

  SplineOracle(int order_, int d_) : order(order_), d(d_), gamma(d_) {}
  SplineOracle(int order_, int d_, const IMat& N_, const Ix& gamma_)
      : order(order_), d(d_), N(N_), gamma(gamma_) {}
};

/// d^mu of the oracle function at a rational point, exact.
Rat eval_spline(const SplineOracle& oracle, const RatVec& x, const Ix& mu);

/// Exact samples on m^{-n} Z^d over the box (indices at scale m^{-n}).
Grid<Rat> oracle_grid_exact(const SplineOracle& oracle, int level, int m, const Box& box,
                            const Ix& mu);
Grid<CD> oracle_grid(const SplineOracle& oracle, int level, int m, const Box& box, const Ix& mu);

/// Natural index box of the oracle support at the given level.
Box oracle_support_box(const SplineOracle& oracle, int level, int m);

/// Integer samples d^mu phi(k) of the (possibly vector-valued) balanced
/// spline refinable function, as an r x 1 filter; gammas lists the component
/// shifts (one per component).
MatrixFilter<Rat> oracle_integer_samples(int order, const IMat& N, const std::vector<Ix>& gammas,
                                         const Ix& mu);

}  // namespace vecsub
