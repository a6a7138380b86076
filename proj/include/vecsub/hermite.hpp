#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vecsub/grid.hpp"
#include "vecsub/sumrules.hpp"

namespace vecsub {

/// Type multiset Lambda = {nu^1,...,nu^r}, nu^1 = 0.
struct HermiteType {
  std::vector<Ix> lambda;
  int mtilde = 0;  // max |nu^l|

  explicit HermiteType(std::vector<Ix> lam) : lambda(std::move(lam)) {
    if (lambda.empty() || !lambda[0].is_zero())
      throw math_error("HermiteType: nu^1 must be 0");
    for (const Ix& nu : lambda) mtilde = std::max(mtilde, int(nu.order()));
  }
  int r() const { return int(lambda.size()); }
};

struct LambdaMatch {
  bool ok = false;
  Rat scale;  // the constant c with upsilon_l = c (i xi)^{nu^l} + O(...)
};

/// upsilon_hat = c [(i xi)^{nu^1} + O, ..., (i xi)^{nu^r} + O] for a single
/// nonzero constant c; checked exactly on T-jets.
LambdaMatch lambda_matching_check(const MatchingJet& upsilon, const HermiteType& type);

enum class GhsdKind { SUFFICIENT, NECESSARY_FAIL, INCONCLUSIVE };

struct GhsdVerdict {
  GhsdKind kind = GhsdKind::INCONCLUSIVE;
  std::string reason;
  double sm_inf_hat = 0;
  bool stability_assumption_flag = false;  // stability of integer shifts unverifiable
};

/// Convergence checker for generalized Hermite schemes of type Lambda with
/// dilation 2 I_d, target limit smoothness m >= mtilde.
GhsdVerdict ghsd_convergence_check(const MatrixFilter<Rat>& a, const HermiteType& type, int m,
                                   int n_max = 0);

/// The r scaled component sequences 2^{|nu^l| n} [S^n v] e_l at level n.
std::vector<Grid<CD>> run_hermite(const MatrixFilter<Rat>& a, const HermiteType& type,
                                  const MatrixFilter<Rat>& v, int n);

}  // namespace vecsub
