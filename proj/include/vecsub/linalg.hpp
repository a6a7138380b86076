#pragma once

#include <optional>
#include <vector>

#include "vecsub/base.hpp"
#include "vecsub/mat.hpp"

namespace vecsub {

/// Solve A x = b exactly (A square rational, must be invertible).
std::vector<Rat> solve_exact(Mat<Rat> A, std::vector<Rat> b);

/// Exact inverse; empty optional when singular.
std::optional<Mat<Rat>> invert_exact(const Mat<Rat>& A);

/// Basis of the right null space of A (columns), exact. Vectors are scaled so
/// the first nonzero entry is 1.
std::vector<std::vector<Rat>> null_space(Mat<Rat> A);

/// Characteristic polynomial coefficients c_0..c_n of det(lambda I - A),
/// c_n = 1, exact (Faddeev-LeVerrier).
std::vector<Rat> char_poly(const Mat<Rat>& A);

/// Multiplicity of `root` as a zero of the polynomial (exact synthetic
/// division); also returns the deflated polynomial.
int root_multiplicity(const std::vector<Rat>& poly, const Rat& root,
                      std::vector<Rat>* deflated = nullptr);

/// All complex roots (float) of a rational polynomial via Durand-Kerner.
std::vector<CD> poly_roots(const std::vector<Rat>& poly);

/// Float eigenvalues of a rational matrix (roots of its exact char poly).
std::vector<CD> eigenvalues_cd(const Mat<Rat>& A);

/// Dominant eigenpair by power iteration with Rayleigh quotient, for the
/// float transition-eigenproblem fallback.
std::pair<double, std::vector<double>> power_iteration(
    const std::vector<std::vector<std::pair<int, double>>>& rows, int iters = 2000);

}  // namespace vecsub
