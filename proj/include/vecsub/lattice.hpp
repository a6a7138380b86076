#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <vector>

#include "vecsub/base.hpp"

namespace vecsub {

constexpr int kMaxDim = 4;

/// A point of Z^d (or a multi-index of N_0^d); d <= kMaxDim.
struct Ix {
  std::array<std::int64_t, kMaxDim> c{};
  int dim = 0;

  Ix() = default;
  explicit Ix(int d) : dim(d) {}
  Ix(std::initializer_list<std::int64_t> v) : dim(int(v.size())) {
    int i = 0;
    for (auto x : v) c[size_t(i++)] = x;
  }

  std::int64_t operator[](int i) const { return c[size_t(i)]; }
  std::int64_t& operator[](int i) { return c[size_t(i)]; }

  friend bool operator==(const Ix& a, const Ix& b) {
    if (a.dim != b.dim) return false;
    for (int i = 0; i < a.dim; ++i)
      if (a.c[size_t(i)] != b.c[size_t(i)]) return false;
    return true;
  }
  friend bool operator!=(const Ix& a, const Ix& b) { return !(a == b); }
  friend Ix operator+(const Ix& a, const Ix& b) {
    Ix r(a.dim);
    for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend Ix operator-(const Ix& a, const Ix& b) {
    Ix r(a.dim);
    for (int i = 0; i < a.dim; ++i) r[i] = a[i] - b[i];
    return r;
  }
  friend Ix operator*(std::int64_t s, const Ix& a) {
    Ix r(a.dim);
    for (int i = 0; i < a.dim; ++i) r[i] = s * a[i];
    return r;
  }

  std::int64_t abs_sum() const {
    std::int64_t s = 0;
    for (int i = 0; i < dim; ++i) s += (c[size_t(i)] < 0 ? -c[size_t(i)] : c[size_t(i)]);
    return s;
  }
  /// |mu| for multi-indices (entries assumed non-negative).
  std::int64_t order() const {
    std::int64_t s = 0;
    for (int i = 0; i < dim; ++i) s += c[size_t(i)];
    return s;
  }
  bool is_zero() const {
    for (int i = 0; i < dim; ++i)
      if (c[size_t(i)] != 0) return false;
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const Ix& a) {
    os << "(";
    for (int i = 0; i < a.dim; ++i) os << (i ? "," : "") << a[i];
    return os << ")";
  }
};

/// Componentwise nu <= mu.
inline bool leq(const Ix& nu, const Ix& mu) {
  for (int i = 0; i < nu.dim; ++i)
    if (nu[i] > mu[i]) return false;
  return true;
}

inline std::uint64_t binom_u64(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  return r;
}

/// Product of componentwise binomials binom(mu, nu).
inline std::uint64_t binom_mi(const Ix& mu, const Ix& nu) {
  std::uint64_t r = 1;
  for (int i = 0; i < mu.dim; ++i) r *= binom_u64(mu[i], nu[i]);
  return r;
}

inline std::uint64_t factorial_mi(const Ix& mu) {
  std::uint64_t r = 1;
  for (int i = 0; i < mu.dim; ++i)
    for (std::int64_t j = 2; j <= mu[i]; ++j) r *= std::uint64_t(j);
  return r;
}

/// All mu in N_0^d with |mu| = q, graded-lex order (first component largest
/// first). This ordering is canonical across the project.
inline std::vector<Ix> enumerate_multiindices(int d, std::int64_t q) {
  std::vector<Ix> out;
  Ix cur(d);
  std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t rem) {
    if (pos == d - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (std::int64_t v = rem; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, rem - v);
    }
  };
  if (d >= 1 && q >= 0) rec(0, q);
  return out;
}

/// Position of mu in an enumeration list; -1 when absent.
inline int mus_index(const std::vector<Ix>& mus, const Ix& mu) {
  for (size_t i = 0; i < mus.size(); ++i)
    if (mus[i] == mu) return int(i);
  return -1;
}

/// All mu with |mu| <= order, grades ascending, graded-lex within each grade.
inline std::vector<Ix> multiindices_upto(int d, std::int64_t order) {
  std::vector<Ix> out;
  for (std::int64_t q = 0; q <= order; ++q) {
    auto g = enumerate_multiindices(d, q);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

/// Dilation M = m I_d with integer m >= 2.
struct DilationSpec {
  int m = 2;
  int d = 1;
  DilationSpec() = default;
  DilationSpec(int m_, int d_) : m(m_), d(d_) {
    if (m < 2) throw math_error("dilation factor must be >= 2");
    if (d < 1 || d > kMaxDim) throw math_error("dimension out of range");
  }
  std::int64_t coset_count() const {
    std::int64_t r = 1;
    for (int i = 0; i < d; ++i) r *= m;
    return r;
  }
  /// m^d as double for float-side scaling.
  double md() const { return double(coset_count()); }
};

/// Small vector of rationals (coset representatives, symmetry centers, ...).
using RatVec = std::vector<Rat>;

/// Omega_{mI_d} = [m^{-1}Z^d] cap [0,1)^d = {gamma/m}, zero first then
/// lexicographic.
inline std::vector<RatVec> omega_set(const DilationSpec& spec) {
  std::vector<std::vector<std::int64_t>> gammas;
  std::vector<std::int64_t> cur(size_t(spec.d), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == spec.d) {
      gammas.push_back(cur);
      return;
    }
    for (int v = 0; v < spec.m; ++v) {
      cur[size_t(pos)] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  std::sort(gammas.begin(), gammas.end());
  std::vector<RatVec> out;
  out.reserve(gammas.size());
  for (auto& g : gammas) {
    RatVec w;
    for (int i = 0; i < spec.d; ++i) w.push_back(ratq(g[size_t(i)], spec.m));
    out.push_back(std::move(w));
  }
  return out;
}

/// Integer coset representatives of Z^d / m Z^d, ordered like omega_set.
inline std::vector<Ix> coset_reps(const DilationSpec& spec) {
  auto om = omega_set(spec);
  std::vector<Ix> out;
  for (auto& w : om) {
    Ix g(spec.d);
    for (int i = 0; i < spec.d; ++i) {
      Rat t = w[size_t(i)] * spec.m;
      g[i] = t.get_num().get_si();
    }
    out.push_back(g);
  }
  return out;
}

/// Small integer matrix (d x d) for lattice transforms and symmetry groups.
struct IMat {
  int n = 0;
  std::vector<std::int64_t> a;  // row-major
  IMat() = default;
  explicit IMat(int n_) : n(n_), a(size_t(n_) * size_t(n_), 0) {}
  std::int64_t& at(int i, int j) { return a[size_t(i) * size_t(n) + size_t(j)]; }
  std::int64_t at(int i, int j) const { return a[size_t(i) * size_t(n) + size_t(j)]; }
  static IMat identity(int n) {
    IMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static IMat scale(int n, std::int64_t s) {
    IMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = s;
    return m;
  }
  Ix apply(const Ix& k) const {
    Ix r(n);
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += at(i, j) * k[j];
      r[i] = s;
    }
    return r;
  }
  RatVec apply(const RatVec& x) const {
    RatVec r(size_t(n), Rat(0));
    for (int i = 0; i < n; ++i) {
      Rat s(0);
      for (int j = 0; j < n; ++j) s += Rat(at(i, j)) * x[size_t(j)];
      r[size_t(i)] = s;
    }
    return r;
  }
  friend IMat operator*(const IMat& A, const IMat& B) {
    IMat C(A.n);
    for (int i = 0; i < A.n; ++i)
      for (int j = 0; j < A.n; ++j) {
        std::int64_t s = 0;
        for (int k = 0; k < A.n; ++k) s += A.at(i, k) * B.at(k, j);
        C.at(i, j) = s;
      }
    return C;
  }
  friend bool operator==(const IMat& A, const IMat& B) { return A.n == B.n && A.a == B.a; }
  IMat transpose() const {
    IMat t(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.at(i, j) = at(j, i);
    return t;
  }
  std::int64_t det() const {
    if (n == 1) return at(0, 0);
    if (n == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    std::int64_t s = 0;
    for (int j = 0; j < n; ++j) {
      IMat sub(n - 1);
      for (int r = 1; r < n; ++r) {
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          sub.at(r - 1, cc++) = at(r, c);
        }
      }
      std::int64_t term = at(0, j) * sub.det();
      s += (j % 2 == 0) ? term : -term;
    }
    return s;
  }
  /// N^{-1} x with exact rational components.
  RatVec solve(const Ix& k) const;
};

/// Gamma_N = [N[0,1)^d] cap Z^d, gamma_1 = 0, the rest ordered by lex order
/// of N^{-1}gamma. Matches the enumeration used for quincunx and sqrt3
/// lattices throughout.
std::vector<Ix> gamma_set(const IMat& N);

}  // namespace vecsub
