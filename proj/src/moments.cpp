#include "vecsub/moments.hpp"

#include <cmath>

namespace vecsub {

template <class T>
Jet<T> jet_reciprocal_impl(const Jet<T>& A) {
  if (A.rows != 1 || A.cols != 1) throw math_error("jet_reciprocal: scalar jets only");
  const T& t0 = A.coeff[0].at(0, 0);
  if (scalar_traits<T>::is_zero(t0)) throw math_error("jet_reciprocal: T_0 is zero");
  Jet<T> B(A.d, 1, 1, A.order);
  B.coeff[0].at(0, 0) = scalar_traits<T>::one() / t0;
  // grade-ascending: T_nu(B) = -(sum_{0<alpha<=nu} binom(nu,alpha) T_alpha(A)
  // T_{nu-alpha}(B)) / T_0(A)
  for (size_t i = 1; i < B.mus.size(); ++i) {
    const Ix& nu = B.mus[i];
    T acc = scalar_traits<T>::zero();
    for (size_t j = 0; j < A.mus.size(); ++j) {
      const Ix& alpha = A.mus[j];
      if (alpha.is_zero() || !leq(alpha, nu)) continue;
      T b = scalar_traits<T>::from_int(long(binom_mi(nu, alpha)));
      acc += b * A.coeff[j].at(0, 0) * B.at(nu - alpha).at(0, 0);
    }
    B.coeff[i].at(0, 0) = (scalar_traits<T>::zero() - acc) / t0;
  }
  return B;
}

template <>
Jet<Rat> jet_reciprocal(const Jet<Rat>& A) {
  return jet_reciprocal_impl(A);
}
template <>
Jet<CD> jet_reciprocal(const Jet<CD>& A) {
  return jet_reciprocal_impl(A);
}

namespace {

// dense polynomial over multiindices_upto(d, order)
struct Poly {
  std::vector<Ix> mus;
  std::vector<Rat> c;
};

Poly poly_zero(const std::vector<Ix>& mus) { return {mus, std::vector<Rat>(mus.size(), Rat(0))}; }

int poly_find(const Poly& p, const Ix& mu) {
  for (size_t i = 0; i < p.mus.size(); ++i)
    if (p.mus[i] == mu) return int(i);
  return -1;
}

// r = p * q truncated to the index set
Poly poly_mul(const Poly& p, const Poly& q, std::int64_t order) {
  Poly r = poly_zero(p.mus);
  for (size_t i = 0; i < p.mus.size(); ++i) {
    if (sgn(p.c[i]) == 0) continue;
    for (size_t j = 0; j < q.mus.size(); ++j) {
      if (sgn(q.c[j]) == 0) continue;
      Ix s = p.mus[i] + q.mus[j];
      if (s.order() > order) continue;
      int t = poly_find(r, s);
      r.c[size_t(t)] += p.c[i] * q.c[j];
    }
  }
  return r;
}

}  // namespace

Jet<Rat> jet_linear_substitute(const Jet<Rat>& A, const std::vector<RatVec>& L) {
  const int d = A.d;
  if (int(L.size()) != d || int(L[0].size()) != d)
    throw math_error("jet_linear_substitute: matrix shape");
  auto mus = multiindices_upto(d, A.order);
  // precompute the linear forms (L y)_j as degree-1 polys
  std::vector<Poly> lin(size_t(d), poly_zero(mus));
  for (int j = 0; j < d; ++j)
    for (int t = 0; t < d; ++t) {
      Ix e(d);
      e[t] = 1;
      lin[size_t(j)].c[size_t(poly_find(lin[size_t(j)], e))] = L[size_t(j)][size_t(t)];
    }
  Jet<Rat> R(d, A.rows, A.cols, A.order);
  for (int ei = 0; ei < A.rows; ++ei)
    for (int ej = 0; ej < A.cols; ++ej) {
      Poly acc = poly_zero(mus);
      for (size_t mi = 0; mi < A.mus.size(); ++mi) {
        const Ix& mu = A.mus[mi];
        Rat t = A.coeff[mi].at(ei, ej);
        if (sgn(t) == 0) continue;
        Poly term = poly_zero(mus);
        term.c[0] = Rat(1);
        for (int ax = 0; ax < d; ++ax)
          for (std::int64_t rep = 0; rep < mu[ax]; ++rep)
            term = poly_mul(term, lin[size_t(ax)], A.order);
        Rat w = t / Rat(factorial_mi(mu));
        for (size_t k = 0; k < acc.c.size(); ++k) acc.c[k] += w * term.c[k];
      }
      for (size_t k = 0; k < mus.size(); ++k)
        R.coeff[k].at(ei, ej) = acc.c[k] * Rat(factorial_mi(mus[k]));
    }
  return R;
}

namespace {

template <class T>
Jet<CD> jet_at_frequency_impl(const MatrixFilter<T>& u, const RatVec& omega,
                              std::int64_t order) {
  bool half_turns = true;
  for (const Rat& w : omega)
    if (!(w.get_den() == 1 || w.get_den() == 2)) half_turns = false;

  if (half_turns && scalar_traits<T>::exact) {
    // phase (-1)^{g.k} with g = 2*omega integer vector: exact path
    std::vector<std::int64_t> g;
    for (const Rat& w : omega) {
      Rat t = w * 2;
      g.push_back(t.get_num().get_si());
    }
    Jet<T> j(u.d, u.rows, u.cols, order);
    for (std::int64_t f = 0; f < u.npoints(); ++f) {
      Ix k = u.box.unflat(f);
      const T* p = u.at_flat(f);
      std::int64_t dot = 0;
      for (int i = 0; i < u.d; ++i) dot += g[size_t(i)] * k[i];
      bool neg = ((dot % 2) + 2) % 2 == 1;
      for (size_t mi = 0; mi < j.mus.size(); ++mi) {
        T w = point_pow<T>(k, j.mus[mi]);
        if (neg) w = scalar_traits<T>::from_int(-1) * w;
        if (scalar_traits<T>::is_zero(w)) continue;
        Mat<T>& c = j.coeff[mi];
        for (size_t i = 0; i < c.a.size(); ++i) c.a[i] += p[i] * w;
      }
    }
    return j.to_cd();
  }

  Jet<CD> j(u.d, u.rows, u.cols, order);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (std::int64_t f = 0; f < u.npoints(); ++f) {
    Ix k = u.box.unflat(f);
    const T* p = u.at_flat(f);
    double dot = 0;
    for (int i = 0; i < u.d; ++i) dot += scalar_traits<Rat>::to_double(omega[size_t(i)]) * double(k[i]);
    CD phase = std::polar(1.0, -two_pi * dot);
    for (size_t mi = 0; mi < j.mus.size(); ++mi) {
      CD w = point_pow<CD>(k, j.mus[mi]) * phase;
      Mat<CD>& c = j.coeff[mi];
      for (size_t i = 0; i < c.a.size(); ++i) c.a[i] += scalar_traits<T>::to_cd(p[i]) * w;
    }
  }
  return j;
}

}  // namespace

template <>
Jet<CD> jet_at_frequency(const MatrixFilter<Rat>& u, const RatVec& omega, std::int64_t order) {
  return jet_at_frequency_impl(u, omega, order);
}
template <>
Jet<CD> jet_at_frequency(const MatrixFilter<CD>& u, const RatVec& omega, std::int64_t order) {
  return jet_at_frequency_impl(u, omega, order);
}

}  // namespace vecsub
