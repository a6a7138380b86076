#pragma once

#include <string>
#include <vector>

#include "vecsub/spaces.hpp"
#include "vecsub/sumrules.hpp"

namespace vecsub {

/// p = 0 encodes infinity throughout this module.

struct RhoEstimate {
  int p = 0;
  int m = 0;       // generator order used (B_{m-1,upsilon})
  int n_used = 0;  // levels actually computed
  std::vector<std::string> generator_labels;
  std::vector<std::vector<double>> s;  // [generator][n-1] = s_n
  std::vector<double> fit;             // per-generator trailing-window log slope (exp)
  double rho_hat = 0;
  bool stabilized = false;
  double window_delta = 0;   // |last fit - previous fit| on the max generator
  bool resource_capped = false;
  bool exactly_flat = false;  // exact-arithmetic s_n constant over the probe range
};

/// Finite-n estimate of rho_m(a, mI_d, upsilon)_p: iterates
/// u_n = [S^n(delta I_r)] * w for every w in B_{m-1,upsilon} and fits the
/// log-slope of s_n = ||u_n||_p over the trailing half window.
RhoEstimate rho_estimate(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                         const MatchingJet& upsilon, int m, int p, int n_max);

struct SmEntry {
  int p = 0;
  int sum_rule_order = 0;
  RhoEstimate rho;
  double sm_hat = 0;
  bool stabilized = false;
};

/// sm_p estimate through the full sum-rule order m_a and its recursion jet:
/// sm_hat = d/p - log_m rho_hat.
SmEntry sm_estimate(const MatrixFilter<Rat>& a, const DilationSpec& spec, int p, int n_max);

/// [sm2 - d/2, sm2]: the p = infinity bracket from the L2 estimate.
std::pair<double, double> sm_infty_interval(double sm2, int d);

enum class Verdict { CONVERGENT, INCONCLUSIVE, NOT_CONVERGENT };

struct ConvergenceReport {
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::string reason;
  int sum_rule_order = 0;
  double sm_inf_hat = 0;
  double sm2_hat = 0;
  double sm_inf_lower_from_2 = 0;
  bool eigen_ok = false;
  bool stabilized = false;
};

/// Full convergence verdict for target smoothness m (checks:
/// sum rules, spectral condition, smoothness estimate). Hard negatives come
/// only from exact algebraic failures or exactly flat iterates.
ConvergenceReport convergence_check(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                    int target_m, int n_max = 0);

int default_nmax(int d);

}  // namespace vecsub
