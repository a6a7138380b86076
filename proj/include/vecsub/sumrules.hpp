#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vecsub/filter.hpp"
#include "vecsub/grid.hpp"
#include "vecsub/linalg.hpp"
#include "vecsub/moments.hpp"

namespace vecsub {

/// Spectral data of ahat(0). Simplicity of the eigenvalue 1 is decided
/// exactly on the rational characteristic polynomial; moduli of the other
/// eigenvalues are floats with an interval pad.
struct EigenReport {
  std::vector<Rat> charpoly;     // exact coefficients, ascending degree
  std::vector<CD> eigenvalues;   // float
  int one_multiplicity = 0;      // exact
  bool simple_one = false;
  double max_other_modulus = 0;  // over eigenvalues != 1 (exact-count removal)
  bool condition_met = false;    // simple_one && others < m^{-order} (padded)
  bool borderline = false;       // within the pad of the threshold
  double threshold = 0;
};

constexpr double kEigenPad = 1e-10;

EigenReport check_eigen_condition(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                  int order_m);

/// Matching filter of a, represented through its T-jet at 0 (1 x r).
/// Normalization: the first nonzero coordinate of upsilon_hat(0) is pinned
/// to 1.
struct MatchingJet {
  Jet<Rat> jet;          // 1 x r
  int pinned = 0;        // pinned coordinate
  int sr_order = 0;      // sum-rule order this jet certifies (when known)
  int eigen_degree_limit = -1;  // degree at which I - m^q ahat(0) went singular; -1 = none

  std::int64_t order() const { return jet.order; }
};

/// Jet determined by the recursion
///   T_mu(u)[I - m^{|mu|} ahat(0)] = sum_{nu<mu} binom(mu,nu) m^{|nu|}
///                                   T_nu(u) T_{mu-nu}(a),
/// seeded with the left 1-eigenvector of ahat(0). Throws when 1 is not a
/// simple eigenvalue or I - m^q ahat(0) is singular for some q <= order_m.
MatchingJet matching_jet(const MatrixFilter<Rat>& a, const DilationSpec& spec, int order_m);

struct SumRuleCheck {
  bool ok = false;
  // first failing (gamma, mu) of the exact coset-form conditions
  std::optional<std::pair<Ix, Ix>> first_failure;
  bool omega_form_ok = false;  // float cross-check
  explicit operator bool() const { return ok; }
};

/// Order m+1 sum rules: exact coset form
///   jet[e^{-i gamma.xi} upsilon(m xi) ahat^{[gamma]}(m xi)] ==
///   m^{-d} jet[upsilon]   through order m, for every coset gamma;
/// the omega-form of the same condition is evaluated in floats as a
/// cross-check.
SumRuleCheck check_sum_rules(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                             const MatchingJet& upsilon, int order_m,
                             double float_tol = 1e-9);

struct SumRuleOrderResult {
  int order = 0;  // largest m+1 <= cap with order m+1 sum rules
  MatchingJet jet;
  bool capped = false;              // no failure found below the cap
  bool eigen_limited = false;       // recursion stopped early (degenerate degree)
  std::string diagnostic;
};

/// Largest sum-rule order detectable with the recursion jet; the returned
/// jet carries two extra degrees of headroom when available.
SumRuleOrderResult sum_rule_order(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                  int max_order = 20);

struct AdmissibilityItem {
  Ix k;
  Ix nu;
  double deviation = 0;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityItem> items;
  double max_deviation = 0;
  bool grid_coarse = false;  // level too low for the Riemann sums to be meaningful
  bool within(double tol) const { return max_deviation <= tol; }
};

/// Riemann-sum verification of upsilon_hat(xi) phi_hat(xi + 2 pi k) =
/// delta(k) + O(||xi||^{m+1}) on a sampled phi grid.
AdmissibilityReport verify_phi_admissibility(const Grid<CD>& phi, const MatchingJet& upsilon,
                                             int order_m, const std::vector<Ix>& freq_list,
                                             double tol);

}  // namespace vecsub
