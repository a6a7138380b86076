#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "vecsub/base.hpp"
#include "vecsub/lattice.hpp"
#include "vecsub/mat.hpp"

namespace vecsub {

/// Inclusive integer bounding box in Z^d.
struct Box {
  Ix lo, hi;
  int dim = 0;
  bool empty = true;

  Box() = default;
  explicit Box(int d) : lo(d), hi(d), dim(d) {}
  Box(const Ix& l, const Ix& h) : lo(l), hi(h), dim(l.dim), empty(false) {
    for (int i = 0; i < dim; ++i)
      if (l[i] > h[i]) empty = true;
  }

  std::int64_t volume() const {
    if (empty) return 0;
    std::int64_t v = 1;
    for (int i = 0; i < dim; ++i) v *= (hi[i] - lo[i] + 1);
    return v;
  }
  bool contains(const Ix& k) const {
    if (empty) return false;
    for (int i = 0; i < dim; ++i)
      if (k[i] < lo[i] || k[i] > hi[i]) return false;
    return true;
  }
  std::int64_t flat(const Ix& k) const {
    std::int64_t f = 0;
    for (int i = 0; i < dim; ++i) f = f * (hi[i] - lo[i] + 1) + (k[i] - lo[i]);
    return f;
  }
  Ix unflat(std::int64_t f) const {
    Ix k(dim);
    for (int i = dim - 1; i >= 0; --i) {
      std::int64_t w = hi[i] - lo[i] + 1;
      k[i] = lo[i] + (f % w);
      f /= w;
    }
    return k;
  }
  friend Box hull(const Box& a, const Box& b) {
    if (a.empty) return b;
    if (b.empty) return a;
    Box r(a.dim);
    r.empty = false;
    for (int i = 0; i < a.dim; ++i) {
      r.lo[i] = std::min(a.lo[i], b.lo[i]);
      r.hi[i] = std::max(a.hi[i], b.hi[i]);
    }
    return r;
  }
  /// Minkowski sum.
  friend Box operator+(const Box& a, const Box& b) {
    if (a.empty || b.empty) return Box(a.dim ? a.dim : b.dim);
    return Box(a.lo + b.lo, a.hi + b.hi);
  }
  friend Box operator*(std::int64_t s, const Box& b) {
    if (b.empty) return b;
    if (s >= 0) return Box(s * b.lo, s * b.hi);
    return Box(s * b.hi, s * b.lo);
  }
  friend bool operator==(const Box& a, const Box& b) {
    if (a.empty && b.empty) return true;
    return a.empty == b.empty && a.lo == b.lo && a.hi == b.hi;
  }
};

/// Default cap on scalar entries per matrix component of a single filter.
/// Overridable via the VECSUB_SUPPORT_CAP environment variable.
std::int64_t support_cap();

/// Finitely supported map Z^d -> C^{r x s}, stored densely over the bounding
/// box. The universal carrier for masks a, data v, analysis filters u and
/// generators w.
template <class T>
struct MatrixFilter {
  int d = 1;
  int rows = 1, cols = 1;
  Box box;
  std::vector<T> data;  // layout: point-major (box-flat), then row-major r x s

  MatrixFilter() = default;
  MatrixFilter(int d_, int r_, int s_) : d(d_), rows(r_), cols(s_), box(d_) {}
  MatrixFilter(int d_, int r_, int s_, const Box& b) : d(d_), rows(r_), cols(s_), box(b) {
    alloc();
  }

  void alloc() {
    check_cap(box);
    data.assign(size_t(box.volume()) * size_t(rows) * size_t(cols),
                scalar_traits<T>::zero());
  }
  static void check_cap(const Box& b) {
    if (!b.empty && b.volume() > support_cap())
      throw resource_error("filter support box exceeds cap (" +
                           std::to_string(b.volume()) + " > " +
                           std::to_string(support_cap()) + " entries/component)");
  }

  std::int64_t npoints() const { return box.volume(); }
  size_t block() const { return size_t(rows) * size_t(cols); }

  T* at_flat(std::int64_t f) { return data.data() + size_t(f) * block(); }
  const T* at_flat(std::int64_t f) const { return data.data() + size_t(f) * block(); }

  /// Value matrix at lattice point k (zero outside the box).
  Mat<T> value(const Ix& k) const {
    Mat<T> m(rows, cols);
    if (!box.contains(k)) return m;
    const T* p = at_flat(box.flat(k));
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = p[i];
    return m;
  }
  T entry(const Ix& k, int i, int j) const {
    if (!box.contains(k)) return scalar_traits<T>::zero();
    return at_flat(box.flat(k))[size_t(i) * size_t(cols) + size_t(j)];
  }

  /// Insert/overwrite the matrix at k, growing the box as needed.
  void set(const Ix& k, const Mat<T>& m) {
    ensure(Box(k, k));
    T* p = at_flat(box.flat(k));
    for (size_t i = 0; i < m.a.size(); ++i) p[i] = m.a[i];
  }
  void set_entry(const Ix& k, int i, int j, const T& v) {
    ensure(Box(k, k));
    at_flat(box.flat(k))[size_t(i) * size_t(cols) + size_t(j)] = v;
  }
  void add_entry(const Ix& k, int i, int j, const T& v) {
    ensure(Box(k, k));
    at_flat(box.flat(k))[size_t(i) * size_t(cols) + size_t(j)] += v;
  }

  /// Grow storage so that the box covers `b`.
  void ensure(const Box& b) {
    if (b.empty) return;
    if (!box.empty) {
      bool inside = true;
      for (int i = 0; i < d; ++i)
        if (b.lo[i] < box.lo[i] || b.hi[i] > box.hi[i]) inside = false;
      if (inside) return;
    }
    Box nb = hull(box, b);
    check_cap(nb);
    MatrixFilter nf(d, rows, cols, nb);
    if (!box.empty)
      for (std::int64_t f = 0; f < npoints(); ++f) {
        Ix k = box.unflat(f);
        T* dst = nf.at_flat(nb.flat(k));
        const T* src = at_flat(f);
        for (size_t i = 0; i < block(); ++i) dst[i] = src[i];
      }
    *this = std::move(nf);
  }

  /// Shrink the box to the nonzero support (empty box if identically zero).
  void trim() {
    if (box.empty) return;
    Ix lo(d), hi(d);
    bool any = false;
    for (std::int64_t f = 0; f < npoints(); ++f) {
      const T* p = at_flat(f);
      bool nz = false;
      for (size_t i = 0; i < block(); ++i)
        if (!scalar_traits<T>::is_zero(p[i])) {
          nz = true;
          break;
        }
      if (!nz) continue;
      Ix k = box.unflat(f);
      if (!any) {
        lo = hi = k;
        any = true;
      } else
        for (int i = 0; i < d; ++i) {
          lo[i] = std::min(lo[i], k[i]);
          hi[i] = std::max(hi[i], k[i]);
        }
    }
    if (!any) {
      box = Box(d);
      data.clear();
      return;
    }
    Box nb(lo, hi);
    if (nb == box) return;
    MatrixFilter nf(d, rows, cols, nb);
    for (std::int64_t f = 0; f < nf.npoints(); ++f) {
      Ix k = nb.unflat(f);
      const T* src = at_flat(box.flat(k));
      T* dst = nf.at_flat(f);
      for (size_t i = 0; i < block(); ++i) dst[i] = src[i];
    }
    *this = std::move(nf);
  }

  bool is_zero() const {
    for (const auto& x : data)
      if (!scalar_traits<T>::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const MatrixFilter& a, const MatrixFilter& b) {
    if (a.d != b.d || a.rows != b.rows || a.cols != b.cols) return false;
    MatrixFilter x = a, y = b;
    x.trim();
    y.trim();
    return x.box == y.box && x.data == y.data;
  }

  MatrixFilter<CD> to_cd() const {
    MatrixFilter<CD> r(d, rows, cols, box);
    for (size_t i = 0; i < data.size(); ++i) r.data[i] = scalar_traits<T>::to_cd(data[i]);
    return r;
  }

  /// Kronecker delta times I_n.
  static MatrixFilter delta(int d, int n) {
    MatrixFilter f(d, n, n, Box(Ix(d), Ix(d)));
    for (int i = 0; i < n; ++i) f.set_entry(Ix(d), i, i, scalar_traits<T>::one());
    return f;
  }
  /// delta * e_l (column selector), r x 1.
  static MatrixFilter delta_col(int d, int r, int l) {
    MatrixFilter f(d, r, 1, Box(Ix(d), Ix(d)));
    f.set_entry(Ix(d), l, 0, scalar_traits<T>::one());
    return f;
  }
  /// delta * e_l^T (row selector), 1 x r.
  static MatrixFilter delta_row(int d, int r, int l) {
    MatrixFilter f(d, 1, r, Box(Ix(d), Ix(d)));
    f.set_entry(Ix(d), 0, l, scalar_traits<T>::one());
    return f;
  }
};

template <class T>
MatrixFilter<T> operator*(const T& s, const MatrixFilter<T>& f) {
  MatrixFilter<T> r = f;
  for (auto& x : r.data) x *= s;
  return r;
}

template <class T>
MatrixFilter<T> operator+(const MatrixFilter<T>& a, const MatrixFilter<T>& b) {
  if (a.d != b.d || a.rows != b.rows || a.cols != b.cols)
    throw math_error("filter addition: shape mismatch");
  MatrixFilter<T> r(a.d, a.rows, a.cols, hull(a.box, b.box));
  for (std::int64_t f = 0; f < r.npoints(); ++f) {
    Ix k = r.box.unflat(f);
    Mat<T> m = a.value(k) + b.value(k);
    T* p = r.at_flat(f);
    for (size_t i = 0; i < m.a.size(); ++i) p[i] = m.a[i];
  }
  return r;
}

template <class T>
MatrixFilter<T> operator-(const MatrixFilter<T>& a, const MatrixFilter<T>& b) {
  return a + (scalar_traits<T>::from_int(-1) * b);
}

/// Shift by z: out(k) = f(k - z).
template <class T>
MatrixFilter<T> shift(const MatrixFilter<T>& f, const Ix& z) {
  MatrixFilter<T> r = f;
  if (!r.box.empty) {
    r.box.lo = r.box.lo + z;
    r.box.hi = r.box.hi + z;
  }
  return r;
}

/// [v*w](k) = sum_z v(z) w(k-z). Inner dimensions must match, or one factor
/// is 1x1 and acts as a scalar sequence.
template <class T>
MatrixFilter<T> convolve(const MatrixFilter<T>& v, const MatrixFilter<T>& w) {
  if (v.d != w.d) throw math_error("convolve: dimension mismatch");
  const bool vs = (v.rows == 1 && v.cols == 1);
  const bool ws = (w.rows == 1 && w.cols == 1);
  if (!vs && !ws && v.cols != w.rows) throw math_error("convolve: inner shape mismatch");
  int R = vs ? w.rows : v.rows;
  int S = ws ? (vs ? w.cols : v.cols) : w.cols;
  MatrixFilter<T> out(v.d, R, S, v.box + w.box);
  if (v.box.empty || w.box.empty) return out;
  const int inner = vs || ws ? 1 : v.cols;
  for (std::int64_t fa = 0; fa < v.npoints(); ++fa) {
    Ix z = v.box.unflat(fa);
    const T* pv = v.at_flat(fa);
    bool nz = false;
    for (size_t i = 0; i < v.block(); ++i)
      if (!scalar_traits<T>::is_zero(pv[i])) {
        nz = true;
        break;
      }
    if (!nz) continue;
    for (std::int64_t fb = 0; fb < w.npoints(); ++fb) {
      Ix y = w.box.unflat(fb);
      const T* pw = w.at_flat(fb);
      T* po = out.at_flat(out.box.flat(z + y));
      if (vs) {
        const T& s = pv[0];
        for (size_t i = 0; i < w.block(); ++i) po[i] += s * pw[i];
      } else if (ws) {
        const T& s = pw[0];
        for (size_t i = 0; i < v.block(); ++i) po[i] += pv[i] * s;
      } else {
        for (int i = 0; i < R; ++i)
          for (int k = 0; k < inner; ++k) {
            const T& a = pv[size_t(i) * size_t(v.cols) + size_t(k)];
            if (scalar_traits<T>::is_zero(a)) continue;
            for (int j = 0; j < S; ++j)
              po[size_t(i) * size_t(S) + size_t(j)] +=
                  a * pw[size_t(k) * size_t(w.cols) + size_t(j)];
          }
      }
    }
  }
  out.trim();
  return out;
}

/// nabla^mu delta: Fourier side prod_j (1 - e^{-i xi_j})^{mu_j}.
template <class T>
MatrixFilter<T> difference_delta(int d, const Ix& mu) {
  MatrixFilter<T> f(d, 1, 1, Box(Ix(d), Ix(d)));
  f.set_entry(Ix(d), 0, 0, scalar_traits<T>::one());
  for (int axis = 0; axis < d; ++axis)
    for (std::int64_t rep = 0; rep < mu[axis]; ++rep) {
      Ix e(d);
      e[axis] = 1;
      f = f - shift(f, e);
    }
  f.trim();
  return f;
}

/// nabla^mu v = [nabla^mu delta] * v.
template <class T>
MatrixFilter<T> difference(const Ix& mu, const MatrixFilter<T>& v) {
  return convolve(difference_delta<T>(v.d, mu), v);
}

/// Upsample by integer stride s: out(s k) = f(k).
template <class T>
MatrixFilter<T> upsample(const MatrixFilter<T>& f, std::int64_t s) {
  if (f.box.empty) return f;
  MatrixFilter<T> out(f.d, f.rows, f.cols, s * f.box);
  for (std::int64_t fa = 0; fa < f.npoints(); ++fa) {
    Ix k = f.box.unflat(fa);
    const T* src = f.at_flat(fa);
    T* dst = out.at_flat(out.box.flat(s * k));
    for (size_t i = 0; i < f.block(); ++i) dst[i] = src[i];
  }
  return out;
}

/// Subdivision operator out(k) = m^d sum_z v(z) a(k - m z); the
/// mask multiplies on the right of the data.
template <class T>
MatrixFilter<T> subdivision_apply(const MatrixFilter<T>& a, const DilationSpec& spec,
                                  const MatrixFilter<T>& v) {
  if (a.rows != a.cols) throw math_error("subdivision: mask must be square");
  if (v.cols != a.rows) throw math_error("subdivision: data/mask shape mismatch");
  T md = scalar_traits<T>::from_int(spec.coset_count());
  MatrixFilter<T> out(v.d, v.rows, v.cols, std::int64_t(spec.m) * v.box + a.box);
  if (v.box.empty || a.box.empty) return out;
  for (std::int64_t fv = 0; fv < v.npoints(); ++fv) {
    Ix z = v.box.unflat(fv);
    const T* pv = v.at_flat(fv);
    bool nz = false;
    for (size_t i = 0; i < v.block(); ++i)
      if (!scalar_traits<T>::is_zero(pv[i])) {
        nz = true;
        break;
      }
    if (!nz) continue;
    Ix mz = std::int64_t(spec.m) * z;
    for (std::int64_t fa = 0; fa < a.npoints(); ++fa) {
      Ix j = a.box.unflat(fa);
      const T* pa = a.at_flat(fa);
      T* po = out.at_flat(out.box.flat(mz + j));
      for (int i = 0; i < v.rows; ++i)
        for (int k = 0; k < v.cols; ++k) {
          T c = pv[size_t(i) * size_t(v.cols) + size_t(k)] * md;
          if (scalar_traits<T>::is_zero(c)) continue;
          for (int l = 0; l < a.cols; ++l)
            po[size_t(i) * size_t(a.cols) + size_t(l)] +=
                c * pa[size_t(k) * size_t(a.cols) + size_t(l)];
        }
    }
  }
  out.trim();
  return out;
}

/// One left-sided cascade/analysis step with stride: out(k) = scale * sum_z
/// a(z) g(k - stride*z). Used by the u_n recursion (stride m^{n-1}) and by
/// grid refinement (stride m^n); iterates only the nonzero mask entries, so
/// the upsampled mask is never materialized.
template <class T>
MatrixFilter<T> stride_conv_left(const MatrixFilter<T>& a, const MatrixFilter<T>& g,
                                 std::int64_t stride, const T& scale) {
  if (a.cols != g.rows) throw math_error("stride_conv_left: shape mismatch");
  MatrixFilter<T> out(g.d, a.rows, g.cols, stride * a.box + g.box);
  if (a.box.empty || g.box.empty) return out;
  // gather over the (small) mask for each output point
  std::vector<std::pair<Ix, Mat<T>>> mask;
  for (std::int64_t fa = 0; fa < a.npoints(); ++fa) {
    Ix z = a.box.unflat(fa);
    Mat<T> mv = a.value(z);
    if (!mv.is_zero()) mask.emplace_back(stride * z, mv * scale);
  }
  for (std::int64_t fo = 0; fo < out.npoints(); ++fo) {
    Ix k = out.box.unflat(fo);
    T* po = out.at_flat(fo);
    for (auto& [sz, av] : mask) {
      Ix kk = k - sz;
      if (!g.box.contains(kk)) continue;
      const T* pg = g.at_flat(g.box.flat(kk));
      for (int i = 0; i < a.rows; ++i)
        for (int t = 0; t < a.cols; ++t) {
          const T& c = av.at(i, t);
          if (scalar_traits<T>::is_zero(c)) continue;
          for (int j = 0; j < g.cols; ++j)
            po[size_t(i) * size_t(g.cols) + size_t(j)] +=
                c * pg[size_t(t) * size_t(g.cols) + size_t(j)];
        }
    }
  }
  return out;
}

/// u_n = [S^n_{a,mI_d}(delta I_r)] * w, computed by the recursion
/// u_n = m^d (a upsampled by m^{n-1}) * u_{n-1}, u_0 = w.
template <class T>
MatrixFilter<T> subdivision_power_convolved(const MatrixFilter<T>& a,
                                            const DilationSpec& spec,
                                            const MatrixFilter<T>& w, int n) {
  if (a.rows != a.cols || a.rows != w.rows)
    throw math_error("subdivision_power_convolved: shape mismatch");
  MatrixFilter<T> u = w;
  T md = scalar_traits<T>::from_int(spec.coset_count());
  std::int64_t stride = 1;
  for (int j = 1; j <= n; ++j) {
    u = stride_conv_left(a, u, stride, md);
    stride *= spec.m;
  }
  u.trim();
  return u;
}

/// Polyphase piece a^{[gamma]}(k) = a(gamma + m k).
template <class T>
MatrixFilter<T> coset_piece(const MatrixFilter<T>& a, const DilationSpec& spec,
                            const Ix& gamma) {
  Ix lo(a.d), hi(a.d);
  if (a.box.empty) return MatrixFilter<T>(a.d, a.rows, a.cols);
  for (int i = 0; i < a.d; ++i) {
    // k range with gamma + m k inside box
    auto ceil_div = [](std::int64_t x, std::int64_t y) {
      return x >= 0 ? (x + y - 1) / y : -((-x) / y);
    };
    auto floor_div = [](std::int64_t x, std::int64_t y) {
      return x >= 0 ? x / y : -(((-x) + y - 1) / y);
    };
    lo[i] = ceil_div(a.box.lo[i] - gamma[i], spec.m);
    hi[i] = floor_div(a.box.hi[i] - gamma[i], spec.m);
  }
  Box b(lo, hi);
  MatrixFilter<T> out(a.d, a.rows, a.cols, b);
  if (b.empty) return out;
  for (std::int64_t f = 0; f < out.npoints(); ++f) {
    Ix k = out.box.unflat(f);
    Mat<T> v = a.value(gamma + std::int64_t(spec.m) * k);
    T* p = out.at_flat(f);
    for (size_t i = 0; i < v.a.size(); ++i) p[i] = v.a[i];
  }
  out.trim();
  return out;
}

/// Full polyphase decomposition, cosets ordered like coset_reps().
template <class T>
std::vector<MatrixFilter<T>> coset_split(const MatrixFilter<T>& a, const DilationSpec& spec) {
  std::vector<MatrixFilter<T>> out;
  for (const Ix& g : coset_reps(spec)) out.push_back(coset_piece(a, spec, g));
  return out;
}

/// Inverse of coset_split.
template <class T>
MatrixFilter<T> coset_merge(const std::vector<MatrixFilter<T>>& pieces,
                            const DilationSpec& spec) {
  auto reps = coset_reps(spec);
  if (pieces.size() != reps.size()) throw math_error("coset_merge: piece count");
  MatrixFilter<T> out(pieces[0].d, pieces[0].rows, pieces[0].cols);
  for (size_t i = 0; i < reps.size(); ++i) {
    const auto& p = pieces[i];
    for (std::int64_t f = 0; f < p.npoints(); ++f) {
      Ix k = p.box.unflat(f);
      Mat<T> v = p.value(k);
      if (!v.is_zero()) out.set(reps[i] + std::int64_t(spec.m) * k, v);
    }
  }
  out.trim();
  return out;
}

/// Norm of one scalar component sequence, then summed over components:
/// ||f|| = sum_{i,j} ||f_{ij}||_p, p in {1,2,inf} (p=0 encodes infinity).
template <class T>
double filter_norm(const MatrixFilter<T>& f, int p) {
  double total = 0;
  for (int i = 0; i < f.rows; ++i)
    for (int j = 0; j < f.cols; ++j) {
      double acc = 0;
      for (std::int64_t fp = 0; fp < f.npoints(); ++fp) {
        double m = std::abs(scalar_traits<T>::to_cd(
            f.at_flat(fp)[size_t(i) * size_t(f.cols) + size_t(j)]));
        if (p == 1) acc += m;
        else if (p == 2) acc += m * m;
        else acc = std::max(acc, m);
      }
      total += (p == 2) ? std::sqrt(acc) : acc;
    }
  return total;
}

/// Sum over all lattice points: hat f at frequency 0.
template <class T>
Mat<T> filter_sum(const MatrixFilter<T>& f) {
  Mat<T> s(f.rows, f.cols);
  for (std::int64_t fp = 0; fp < f.npoints(); ++fp) {
    const T* p = f.at_flat(fp);
    for (size_t i = 0; i < s.a.size(); ++i) s.a[i] += p[i];
  }
  return s;
}

}  // namespace vecsub
