#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vecsub/filter.hpp"
#include "vecsub/sumrules.hpp"

namespace vecsub {

/// Centred B-spline filter of even order 2m: coefficients
/// 2^{-2m} binom(2m, k+m) on [-m, m].
MatrixFilter<Rat> bspline_filter(int order2m);

/// Two-dimensional tensor product of 1-D scalar filters.
MatrixFilter<Rat> tensor_filter(const MatrixFilter<Rat>& A, const MatrixFilter<Rat>& B);

/// Three-direction box-spline style mask
/// 2^{-3m} (1+e^{-i xi1})^m (1+e^{-i xi2})^m (1+e^{i(xi1+xi2)})^m.
MatrixFilter<Rat> three_direction_filter(int m);

IMat quincunx_matrix();
IMat sqrt3_matrix();

/// Vectorized mask a_{jl}(k) = A(N k - 2 gamma_j + gamma_l) with
/// Gamma_N = gamma_set(N); r = |det N|.
MatrixFilter<Rat> balanced_from_scalar(const MatrixFilter<Rat>& A, const IMat& N);

struct BalancedJet {
  MatchingJet jet;    // assembled upsilon = chat(xi) [e^{i N^{-1}gamma_l . xi}]
  Jet<Rat> c_jet;     // scalar chat jet, chat(0) = 1
};

/// Matching jet of the balanced mask, solved degree by degree from
/// chat(2 N^T xi) Ahat(xi) = chat(N^T xi) + O(||xi||^{2m}).
BalancedJet balanced_matching_jet(const MatrixFilter<Rat>& A, const IMat& N, int order2m);

/// Finite symmetry group with centers and optional per-element mixing.
struct SymmetrySpec {
  std::vector<IMat> group;
  std::vector<RatVec> centers;          // T = {c_1..c_r}
  std::vector<Mat<Rat>> mixing;         // S_E per group element; empty = identity
  void validate(int r) const;
  int find(const IMat& E) const;
};

struct SymmetryCheck {
  bool ok = false;
  bool structural_incompatible = false;  // phase shifts do not land on the lattice
  // witness of the first failure: group element index, lattice point, block
  std::optional<std::tuple<int, Ix, std::pair<int, int>>> witness;
  explicit operator bool() const { return ok; }
};

/// Exact time-domain verification of G-symmetry about T (with mixing S_E);
/// evaluated as an identity of matrix Laurent polynomials on the refined
/// lattice, so no trigonometric evaluation is involved.
SymmetryCheck check_symmetry(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                             const SymmetrySpec& sym);

/// Same, but when identity mixing fails retry each element over signed
/// permutation matrices.
SymmetryCheck check_symmetry_auto_mixing(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                         SymmetrySpec sym);

struct BuiltinGroups {
  std::vector<IMat> D4;  // full-axis, 8 elements
  std::vector<IMat> D6;  // hexagon, 12 elements
  std::vector<IMat> H;   // index-2 subgroup of D6 compatible with sqrt3, 6 elements
};
const BuiltinGroups& builtin_groups();

std::vector<RatVec> quincunx_centers();  // T of the quincunx construction
std::vector<RatVec> sqrt3_centers();     // T of the sqrt3 construction

struct Fixture {
  std::string name;
  MatrixFilter<Rat> a;
  int claimed_sum_rule_order = 0;
  std::string symmetry_group;           // "D4", "D6", "H"
  std::vector<RatVec> symmetry_centers;
  double claimed_sm2 = 0;               // 0 when only an sm_inf value is attached
  double claimed_sm_inf = 0;            // 0 when unknown
};

/// The printed example masks, transcribed exactly. Attached metadata is
/// re-derived by the test suites, never trusted.
const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);

}  // namespace vecsub
