#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "vecsub/grid.hpp"
#include "vecsub/spaces.hpp"
#include "vecsub/sumrules.hpp"

namespace vecsub {

/// Solve the transition eigenproblem v(j) = m^d sum_k a(k) v(m j - k) on the
/// half-open invariant box and normalize upsilon_hat(0).sum v = 1.
/// Degenerate eigenstructure or a zero normalization is an error.
Grid<Rat> phi_integer_values(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                             const MatchingJet& upsilon);

/// One cascade step on samples: out(k) = m^d sum_z a(z) g(k - m^n z); exact
/// level-(n+1) sampling of R_a f whenever g holds level-n samples of f.
template <class T>
Grid<T> refine(const MatrixFilter<T>& a, const DilationSpec& spec, const Grid<T>& g) {
  if (a.rows != g.r) throw math_error("refine: component mismatch");
  std::int64_t stride = 1;
  for (int i = 0; i < g.level; ++i) stride *= spec.m;
  MatrixFilter<T> next =
      stride_conv_left(a, g.as_filter(), stride, scalar_traits<T>::from_int(spec.coset_count()));
  return Grid<T>::from_filter(next, g.level + 1, spec.m);
}

struct RunResult {
  Grid<CD> grid;  // scalar grid of m^{|mu| n} [S^n v] * u
  Rat beta;
  Ix mu;
  int level = 0;
  std::string interpretation;  // beta * d^mu (v*phi)(m^-n k)
};

/// Execute the subdivision scheme: requires u in mom_{upsilon,mu}.
RunResult run_scheme(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                     const MatrixFilter<Rat>& v, const MatrixFilter<Rat>& u, const Ix& mu,
                     int n, const MatchingJet& upsilon);

/// Restrict a level-n grid to integer nodes (indices divisible by m^n),
/// returned as an r x 1 filter.
template <class T>
MatrixFilter<T> integer_derivative_samples(const Grid<T>& g) {
  std::int64_t stride = 1;
  for (int i = 0; i < g.level; ++i) stride *= g.m;
  MatrixFilter<T> out(g.d, g.r, 1);
  for (std::int64_t f = 0; f < g.box.volume(); ++f) {
    Ix k = g.box.unflat(f);
    bool integral = true;
    for (int i = 0; i < g.d; ++i)
      if (k[i] % stride != 0) integral = false;
    if (!integral) continue;
    const T* p = g.at(f);
    Ix j(g.d);
    for (int i = 0; i < g.d; ++i) j[i] = k[i] / stride;
    for (int c = 0; c < g.r; ++c)
      if (!scalar_traits<T>::is_zero(p[c])) out.set_entry(j, c, 0, p[c]);
  }
  out.trim();
  return out;
}

struct DrvResult {
  int value = 0;               // drv(upsilon * u)
  bool unbounded = false;      // no deviation found through the jet order
  std::int64_t jet_order = 0;  // order scanned
};

/// First order where upsilon_hat u_hat deviates from beta (i xi)^mu.
DrvResult drv_index(const MatchingJet& upsilon, const MatrixFilter<Rat>& u, const Ix& mu);

struct RateReport {
  std::vector<int> levels;
  std::vector<double> errors;  // sup-norm vs oracle per level
  double fitted_exponent = 0;  // decay rate base m
  double S = 0;                // min(drv - |mu|, sm_inf_hat - |mu|)
  int drv = 0;
  bool drv_unbounded = false;
  double sm_inf_hat = 0;
  double margin = 0;           // S - fitted
  bool outside_rate_hypothesis = false;  // drv exceeds the regime with an established decay bound
  bool errors_at_roundoff = false;
};

/// Target provider: level -> scalar grid of d^mu (v*phi)(m^{-n} .).
using OracleGridFn = std::function<Grid<CD>(int level)>;

RateReport measure_rate(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                        const MatrixFilter<Rat>& v, const MatrixFilter<Rat>& u, const Ix& mu,
                        const OracleGridFn& oracle, int n0, int n1, const MatchingJet& upsilon,
                        double sm_inf_hat);

}  // namespace vecsub
