#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vecsub/moments.hpp"
#include "vecsub/sumrules.hpp"

namespace vecsub {

struct GeneratorSet {
  std::vector<MatrixFilter<Rat>> items;
  std::vector<std::string> labels;
  std::string kind;  // "Vmy(m)" or "Mom(mu)"
};

/// Finitely supported filter (r x 1 column, r = target.rows) whose jet at 0
/// equals the target through its order. Realized on the tensor grid
/// {0..order}^d via per-axis Vandermonde solves; moments of total degree
/// above the order (inside the tensor range) are set to zero.
MatrixFilter<Rat> filter_with_jet(const Jet<Rat>& target);

/// B_{m-1,y} = {nabla^mu delta e_p : |mu| = m} u {delta e_j - b_j e_p},
/// p the pinned coordinate of upsilon, bhat_j = yhat_j / yhat_p + O(||xi||^m).
GeneratorSet vmy_generators(const MatchingJet& upsilon, int m);

/// beta_{upsilon,u,mu} iff u lies in mom_{upsilon,mu}; nullopt otherwise.
std::optional<Rat> mom_membership(const MatchingJet& upsilon, const MatrixFilter<Rat>& u,
                                  const Ix& mu);

/// In exact arithmetic the first violated jet order, for error messages.
std::optional<Ix> mom_first_violation(const MatchingJet& upsilon, const MatrixFilter<Rat>& u,
                                      const Ix& mu);

/// G_{upsilon,mu} = {U * nabla^mu delta e_1} u {U * delta e_l : l = 2..r}
/// with U the unit-triangular reduction of upsilon.
GeneratorSet mom_generators(const MatchingJet& upsilon, const Ix& mu);

}  // namespace vecsub
