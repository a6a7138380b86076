#pragma once

#include <optional>
#include <vector>

#include "vecsub/filter.hpp"
#include "vecsub/lattice.hpp"
#include "vecsub/mat.hpp"

namespace vecsub {

/// T-normalized Fourier jet at a frequency: coefficients
///   T_mu(u) = sum_k u(k) k^mu   (at frequency 0), so that
///   d^mu uhat(0) = (-i)^{|mu|} T_mu(u).
/// At a frequency 2*pi*omega the same normalization carries a phase:
///   T_mu = sum_k u(k) k^mu e^{-2 pi i omega.k}.
/// Keeping the (-i) powers divided out makes every moment identity in the
/// project rational; they are reinstated only in user-facing reports.
template <class T>
struct Jet {
  int d = 1;
  int rows = 1, cols = 1;
  std::int64_t order = 0;
  std::vector<Ix> mus;        // multiindices_upto(d, order)
  std::vector<Mat<T>> coeff;  // aligned with mus

  Jet() = default;
  Jet(int d_, int r_, int s_, std::int64_t order_)
      : d(d_), rows(r_), cols(s_), order(order_), mus(multiindices_upto(d_, order_)) {
    coeff.assign(mus.size(), Mat<T>(r_, s_));
  }

  int find(const Ix& mu) const {
    for (size_t i = 0; i < mus.size(); ++i)
      if (mus[i] == mu) return int(i);
    return -1;
  }
  const Mat<T>& at(const Ix& mu) const {
    int i = find(mu);
    if (i < 0) throw math_error("jet coefficient out of range");
    return coeff[size_t(i)];
  }
  Mat<T>& at(const Ix& mu) {
    int i = find(mu);
    if (i < 0) throw math_error("jet coefficient out of range");
    return coeff[size_t(i)];
  }
  /// Scalar jets only.
  T scalar(const Ix& mu) const { return at(mu).at(0, 0); }

  Jet truncated(std::int64_t new_order) const {
    Jet r(d, rows, cols, std::min(new_order, order));
    for (size_t i = 0; i < r.mus.size(); ++i) r.coeff[i] = coeff[i];
    return r;
  }

  Jet<CD> to_cd() const {
    Jet<CD> r(d, rows, cols, order);
    for (size_t i = 0; i < coeff.size(); ++i) r.coeff[i] = coeff[i].to_cd();
    return r;
  }

  Jet row(int i0) const {
    Jet r(d, 1, cols, order);
    for (size_t i = 0; i < coeff.size(); ++i)
      for (int j = 0; j < cols; ++j) r.coeff[i].at(0, j) = coeff[i].at(i0, j);
    return r;
  }
  Jet column(int j0) const {
    Jet r(d, rows, 1, order);
    for (size_t i = 0; i < coeff.size(); ++i)
      for (int j = 0; j < rows; ++j) r.coeff[i].at(j, 0) = coeff[i].at(j, j0);
    return r;
  }
  Jet component(int i0, int j0) const {
    Jet r(d, 1, 1, order);
    for (size_t i = 0; i < coeff.size(); ++i) r.coeff[i].at(0, 0) = coeff[i].at(i0, j0);
    return r;
  }

  friend Jet operator*(const T& s, const Jet& j) {
    Jet r = j;
    for (auto& m : r.coeff) m = m * s;
    return r;
  }
  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    for (size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] = r.coeff[i] + b.coeff[i];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    for (size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] = r.coeff[i] - b.coeff[i];
    return r;
  }
};

template <class T>
T int_pow(T base, std::int64_t e) {
  T r = scalar_traits<T>::one();
  for (std::int64_t i = 0; i < e; ++i) r *= base;
  return r;
}

/// k^mu as scalar.
template <class T>
T point_pow(const Ix& k, const Ix& mu) {
  T r = scalar_traits<T>::one();
  for (int i = 0; i < k.dim; ++i) r *= int_pow(scalar_traits<T>::from_int(long(k[i])), mu[i]);
  return r;
}

/// Exact T_mu values for all |mu| <= order.
template <class T>
Jet<T> jet_at_zero(const MatrixFilter<T>& u, std::int64_t order) {
  Jet<T> j(u.d, u.rows, u.cols, order);
  for (std::int64_t f = 0; f < u.npoints(); ++f) {
    Ix k = u.box.unflat(f);
    const T* p = u.at_flat(f);
    bool nz = false;
    for (size_t i = 0; i < u.block(); ++i)
      if (!scalar_traits<T>::is_zero(p[i])) {
        nz = true;
        break;
      }
    if (!nz) continue;
    for (size_t mi = 0; mi < j.mus.size(); ++mi) {
      T w = point_pow<T>(k, j.mus[mi]);
      if (scalar_traits<T>::is_zero(w)) continue;
      Mat<T>& c = j.coeff[mi];
      for (size_t i = 0; i < c.a.size(); ++i) c.a[i] += p[i] * w;
    }
  }
  return j;
}

/// Leibniz product: T_mu(AB) = sum_{nu<=mu} binom(mu,nu) T_nu(A) T_{mu-nu}(B).
template <class T>
Jet<T> jet_product(const Jet<T>& A, const Jet<T>& B) {
  if (A.cols != B.rows && !(A.rows == 1 && A.cols == 1) && !(B.rows == 1 && B.cols == 1))
    throw math_error("jet_product: shape mismatch");
  std::int64_t ord = std::min(A.order, B.order);
  const bool as = (A.rows == 1 && A.cols == 1);
  const bool bs = (B.rows == 1 && B.cols == 1);
  int R = as ? B.rows : A.rows;
  int S = bs ? (as ? B.cols : A.cols) : B.cols;
  Jet<T> r(A.d, R, S, ord);
  for (size_t mi = 0; mi < r.mus.size(); ++mi) {
    const Ix& mu = r.mus[mi];
    for (size_t ni = 0; ni < r.mus.size(); ++ni) {
      const Ix& nu = r.mus[ni];
      if (!leq(nu, mu)) continue;
      T b = scalar_traits<T>::from_int(long(binom_mi(mu, nu)));
      const Mat<T>& ma = as ? A.at(nu) : A.at(nu);
      const Mat<T>& mb = B.at(mu - nu);
      if (as) {
        r.coeff[mi] = r.coeff[mi] + mb * (ma.at(0, 0) * b);
      } else if (bs) {
        r.coeff[mi] = r.coeff[mi] + ma * (mb.at(0, 0) * b);
      } else {
        r.coeff[mi] = r.coeff[mi] + (ma * mb) * b;
      }
    }
  }
  return r;
}

/// T_mu(f(m .)) = m^{|mu|} T_mu(f).
template <class T>
Jet<T> jet_scale_argument(const Jet<T>& A, std::int64_t m) {
  Jet<T> r = A;
  for (size_t i = 0; i < r.mus.size(); ++i)
    r.coeff[i] = r.coeff[i] * int_pow(scalar_traits<T>::from_int(long(m)), r.mus[i].order());
  return r;
}

/// Scalar jet of xi -> e^{-i gamma.xi}: T_mu = gamma^mu.
inline Jet<Rat> character_jet(const RatVec& gamma, std::int64_t order) {
  int d = int(gamma.size());
  Jet<Rat> j(d, 1, 1, order);
  for (size_t i = 0; i < j.mus.size(); ++i) {
    Rat v(1);
    for (int t = 0; t < d; ++t) v *= int_pow(gamma[size_t(t)], j.mus[i][t]);
    j.coeff[i].at(0, 0) = v;
  }
  return j;
}

/// Jet of (i xi)^mu in T-normalization: T_nu = (-1)^{|mu|} mu! delta(nu-mu).
template <class T>
Jet<T> monomial_jet(int d, const Ix& mu, std::int64_t order) {
  Jet<T> j(d, 1, 1, order);
  int idx = j.find(mu);
  if (idx >= 0) {
    T v = scalar_traits<T>::from_int(long(factorial_mi(mu)));
    if (mu.order() % 2 == 1) v = scalar_traits<T>::from_int(-1) * v;
    j.coeff[size_t(idx)].at(0, 0) = v;
  }
  return j;
}

/// T-jet of u at frequency 2*pi*omega (complex floats):
/// T_mu = sum_k u(k) k^mu e^{-2 pi i omega.k}. Exact rational fast path when
/// every phase is a half-turn (all omega denominators divide 2).
template <class T>
Jet<CD> jet_at_frequency(const MatrixFilter<T>& u, const RatVec& omega, std::int64_t order);

/// Coefficient-wise equality through the given order. Exact scalars compare
/// exactly; floats use |x-y| <= tol * max(1, scale).
template <class T>
bool jets_equal_mod(const Jet<T>& A, const Jet<T>& B, std::int64_t through_order,
                    double tol = 1e-9) {
  if (A.d != B.d || A.rows != B.rows || A.cols != B.cols)
    throw math_error("jets_equal_mod: shape mismatch");
  if (A.order < through_order || B.order < through_order)
    throw math_error("jets_equal_mod: order too low");
  double scale = 1.0;
  if (!scalar_traits<T>::exact) {
    for (size_t i = 0; i < A.mus.size(); ++i) {
      if (A.mus[i].order() > through_order) continue;
      for (const auto& x : A.coeff[i].a) scale = std::max(scale, std::abs(to_cd(x)));
      for (const auto& x : B.at(A.mus[i]).a) scale = std::max(scale, std::abs(to_cd(x)));
    }
  }
  for (size_t i = 0; i < A.mus.size(); ++i) {
    if (A.mus[i].order() > through_order) continue;
    const Mat<T>& ma = A.coeff[i];
    const Mat<T>& mb = B.at(A.mus[i]);
    for (size_t t = 0; t < ma.a.size(); ++t) {
      if constexpr (scalar_traits<T>::exact) {
        if (ma.a[t] != mb.a[t]) return false;
      } else {
        if (std::abs(to_cd(ma.a[t]) - to_cd(mb.a[t])) > tol * scale) return false;
      }
    }
  }
  return true;
}

/// Reciprocal of a scalar jet (T_0 != 0), via power-series division.
template <class T>
Jet<T> jet_reciprocal(const Jet<T>& A);

/// A/B for scalar jets = A * reciprocal(B).
template <class T>
Jet<T> jet_divide(const Jet<T>& A, const Jet<T>& B) {
  return jet_product(A, jet_reciprocal(B));
}

/// Jet of f(L xi) for a rational matrix L: plain substitution on the
/// T-polynomial sum_mu T_mu y^mu / mu!.
Jet<Rat> jet_linear_substitute(const Jet<Rat>& A, const std::vector<RatVec>& L);

/// User-facing Taylor coefficient of xi^mu: T_mu (-i)^{|mu|} / mu!. Real for
/// even |mu| (imag part is zero then); reported as a complex pair otherwise.
template <class T>
CD taylor_coefficient(const Jet<T>& A, const Ix& mu) {
  CD t = to_cd(A.scalar(mu));
  CD ipow(1, 0);
  for (std::int64_t i = 0; i < mu.order(); ++i) ipow *= CD(0, -1);
  return t * ipow / double(factorial_mi(mu));
}

}  // namespace vecsub
