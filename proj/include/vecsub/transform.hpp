#pragma once

#include <optional>

#include "vecsub/filter.hpp"
#include "vecsub/sumrules.hpp"

namespace vecsub {

/// Strongly invertible filter: det Uhat(xi) = c0 e^{-i k.xi}, with the exact
/// inverse filter Vhat = Uhat^{-1}.
struct StrongFilter {
  MatrixFilter<Rat> U;
  Rat det_c0;
  Ix det_k;
  MatrixFilter<Rat> inverse;
};

/// Exact Laurent-determinant test; empty when the determinant is not a
/// monomial.
std::optional<StrongFilter> verify_strong(const MatrixFilter<Rat>& U);

/// Unit-triangular reduction: upsilon_hat Uhat = chat [1,0,...,0] +
/// O(||xi||^{m+1}) with chat = upsilon_hat_pivot. det U = +-1.
StrongFilter column_reduce_matching(const MatchingJet& upsilon, int order_m);

/// atilde_hat(xi) = Uhat(m xi)^{-1} ahat(xi) Uhat(xi), realized exactly as
/// upsample(V, m) * a * U.
MatrixFilter<Rat> transform_filter(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                   const StrongFilter& U);

struct InvarianceReport {
  bool sum_rule_order_equal = false;
  int order_a = 0, order_transformed = 0;
  bool finite_n_identity = false;  // [S^n_a (delta I)] * (U*w) == up(U,m^n) * [S^n_at (delta I)] * w
  double sm_delta = 0;             // |sm_inf(a) - sm_inf(atilde)| at equal n
  bool sm_close = false;
  bool pass() const { return sum_rule_order_equal && finite_n_identity && sm_close; }
};

InvarianceReport invariance_suite(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                  const StrongFilter& U, int order_m, int n_levels = 3,
                                  int sm_nmax = 6, double sm_tol = 0.05);

}  // namespace vecsub
