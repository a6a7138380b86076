#include "vecsub/linalg.hpp"

#include <cmath>
#include <complex>

namespace vecsub {

namespace {

// row echelon with full pivoting on rows; returns rank, transforms A (and b
// alongside when present)
int eliminate(Mat<Rat>& A, std::vector<Rat>* b, std::vector<int>& pivot_cols) {
  int n = A.rows, m = A.cols;
  int row = 0;
  pivot_cols.clear();
  for (int col = 0; col < m && row < n; ++col) {
    int p = -1;
    for (int i = row; i < n; ++i)
      if (sgn(A.at(i, col)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row) {
      for (int j = 0; j < m; ++j) std::swap(A.at(p, j), A.at(row, j));
      if (b) std::swap((*b)[size_t(p)], (*b)[size_t(row)]);
    }
    Rat inv = Rat(1) / A.at(row, col);
    for (int j = col; j < m; ++j) A.at(row, j) *= inv;
    if (b) (*b)[size_t(row)] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == row) continue;
      Rat f = A.at(i, col);
      if (sgn(f) == 0) continue;
      for (int j = col; j < m; ++j) A.at(i, j) -= f * A.at(row, j);
      if (b) (*b)[size_t(i)] -= f * (*b)[size_t(row)];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return row;
}

}  // namespace

std::vector<Rat> solve_exact(Mat<Rat> A, std::vector<Rat> b) {
  if (A.rows != A.cols || int(b.size()) != A.rows) throw math_error("solve_exact: shape");
  std::vector<int> pv;
  int rank = eliminate(A, &b, pv);
  if (rank != A.rows) throw math_error("solve_exact: singular matrix");
  std::vector<Rat> x(size_t(A.rows));
  for (int i = 0; i < rank; ++i) x[size_t(pv[size_t(i)])] = b[size_t(i)];
  return x;
}

std::optional<Mat<Rat>> invert_exact(const Mat<Rat>& A) {
  if (A.rows != A.cols) throw math_error("invert_exact: not square");
  int n = A.rows;
  Mat<Rat> W(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
    W.at(i, n + i) = Rat(1);
  }
  std::vector<int> pv;
  int rank = eliminate(W, nullptr, pv);
  if (rank != n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (pv[size_t(i)] != i) return std::nullopt;
  Mat<Rat> R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R.at(i, j) = W.at(i, n + j);
  return R;
}

std::vector<std::vector<Rat>> null_space(Mat<Rat> A) {
  int n = A.rows, m = A.cols;
  (void)n;
  std::vector<int> pv;
  eliminate(A, nullptr, pv);
  std::vector<bool> is_pivot(size_t(m), false);
  for (int c : pv) is_pivot[size_t(c)] = true;
  std::vector<std::vector<Rat>> basis;
  for (int freec = 0; freec < m; ++freec) {
    if (is_pivot[size_t(freec)]) continue;
    std::vector<Rat> v(size_t(m), Rat(0));
    v[size_t(freec)] = Rat(1);
    for (size_t i = 0; i < pv.size(); ++i) v[size_t(pv[i])] = -A.at(int(i), freec);
    // normalize first nonzero to 1
    for (auto& c : v)
      if (sgn(c) != 0) {
        Rat inv = Rat(1) / c;
        for (auto& x : v) x *= inv;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rat> char_poly(const Mat<Rat>& A) {
  if (A.rows != A.cols) throw math_error("char_poly: not square");
  int n = A.rows;
  // Faddeev-LeVerrier: p(l) = l^n + c_{n-1} l^{n-1} + ... + c_0
  std::vector<Rat> c(size_t(n + 1), Rat(0));
  c[size_t(n)] = Rat(1);
  Mat<Rat> M(n, n);  // zero
  Rat cn(1);
  Mat<Rat> I = Mat<Rat>::identity(n);
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    Mat<Rat> AM = A * M;
    for (int i = 0; i < n; ++i) AM.at(i, i) += cn;
    M = AM;
    Mat<Rat> P = A * M;
    Rat tr(0);
    for (int i = 0; i < n; ++i) tr += P.at(i, i);
    cn = -tr / Rat(k);
    c[size_t(n - k)] = cn;
  }
  return c;
}

int root_multiplicity(const std::vector<Rat>& poly, const Rat& root,
                      std::vector<Rat>* deflated) {
  std::vector<Rat> p = poly;
  int mult = 0;
  while (p.size() > 1) {
    // synthetic division by (x - root)
    std::vector<Rat> q(p.size() - 1);
    Rat carry = p.back();
    for (int i = int(p.size()) - 2; i >= 0; --i) {
      q[size_t(i)] = carry;
      carry = p[size_t(i)] + carry * root;
    }
    if (sgn(carry) != 0) break;
    ++mult;
    p = q;
  }
  if (deflated) *deflated = p;
  return mult;
}

std::vector<CD> poly_roots(const std::vector<Rat>& poly) {
  // strip leading zeros
  std::vector<CD> c;
  int deg = int(poly.size()) - 1;
  while (deg > 0 && sgn(poly[size_t(deg)]) == 0) --deg;
  if (deg <= 0) return {};
  std::vector<CD> a(size_t(deg + 1));
  for (int i = 0; i <= deg; ++i) a[size_t(i)] = CD(poly[size_t(i)].get_d(), 0);
  // Durand-Kerner
  std::vector<CD> z(static_cast<size_t>(deg));
  CD seed(0.4, 0.9);
  CD w(1, 0);
  for (int i = 0; i < deg; ++i) {
    z[size_t(i)] = w;
    w *= seed;
  }
  auto eval = [&](CD x) {
    CD r = a[size_t(deg)];
    for (int i = deg - 1; i >= 0; --i) r = r * x + a[size_t(i)];
    return r;
  };
  for (int it = 0; it < 500; ++it) {
    double moved = 0;
    for (int i = 0; i < deg; ++i) {
      CD denom = a[size_t(deg)];
      for (int j = 0; j < deg; ++j)
        if (j != i) denom *= (z[size_t(i)] - z[size_t(j)]);
      if (std::abs(denom) < 1e-300) continue;
      CD delta = eval(z[size_t(i)]) / denom;
      z[size_t(i)] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

std::vector<CD> eigenvalues_cd(const Mat<Rat>& A) { return poly_roots(char_poly(A)); }

std::pair<double, std::vector<double>> power_iteration(
    const std::vector<std::vector<std::pair<int, double>>>& rows, int iters) {
  size_t n = rows.size();
  std::vector<double> v(n, 1.0 / std::sqrt(double(n))), w(n);
  double lambda = 0;
  for (int it = 0; it < iters; ++it) {
    for (size_t i = 0; i < n; ++i) {
      double s = 0;
      for (auto& [j, c] : rows[i]) s += c * v[size_t(j)];
      w[i] = s;
    }
    double norm = 0, dot = 0;
    for (size_t i = 0; i < n; ++i) {
      norm += w[i] * w[i];
      dot += w[i] * v[i];
    }
    norm = std::sqrt(norm);
    if (norm == 0) return {0.0, v};
    lambda = dot;  // Rayleigh quotient with ||v|| = 1
    for (size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  return {lambda, v};
}

}  // namespace vecsub
