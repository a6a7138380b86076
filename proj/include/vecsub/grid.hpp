#pragma once

#include <vector>

#include "vecsub/filter.hpp"

namespace vecsub {

/// Samples of an r x 1 (or scalar) function on m^{-n} Z^d over a box: the
/// value stored at index k represents f(m^{-n} k).
template <class T>
struct Grid {
  int level = 0;
  int m = 2;
  int d = 1;
  int r = 1;
  Box box;
  std::vector<T> data;  // point-major, r values per point
  bool formal = false;  // eigenvector-convention values of a discontinuous phi

  Grid() = default;
  Grid(int level_, int m_, int d_, int r_, const Box& b)
      : level(level_), m(m_), d(d_), r(r_), box(b) {
    MatrixFilter<T>::check_cap(b);
    data.assign(size_t(b.volume()) * size_t(r), scalar_traits<T>::zero());
  }

  T* at(std::int64_t flat) { return data.data() + size_t(flat) * size_t(r); }
  const T* at(std::int64_t flat) const { return data.data() + size_t(flat) * size_t(r); }

  T value(const Ix& k, int comp) const {
    if (!box.contains(k)) return scalar_traits<T>::zero();
    return at(box.flat(k))[comp];
  }
  void set(const Ix& k, int comp, const T& v) {
    if (!box.contains(k)) throw math_error("grid point outside box");
    at(box.flat(k))[comp] = v;
  }

  /// Real coordinate of index k.
  std::vector<double> coords(const Ix& k) const {
    double scale = 1.0;
    for (int i = 0; i < level; ++i) scale /= double(m);
    std::vector<double> x(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) x[size_t(i)] = double(k[i]) * scale;
    return x;
  }

  Grid<CD> to_cd() const {
    Grid<CD> g(level, m, d, r, box);
    for (size_t i = 0; i < data.size(); ++i) g.data[i] = scalar_traits<T>::to_cd(data[i]);
    g.formal = formal;
    return g;
  }

  /// View as an r x 1 matrix filter on the index lattice.
  MatrixFilter<T> as_filter() const {
    MatrixFilter<T> f(d, r, 1, box);
    for (std::int64_t p = 0; p < box.volume(); ++p) {
      const T* src = at(p);
      T* dst = f.at_flat(p);
      for (int i = 0; i < r; ++i) dst[size_t(i)] = src[i];
    }
    return f;
  }
  static Grid from_filter(const MatrixFilter<T>& f, int level, int m) {
    Grid g(level, m, f.d, f.rows, f.box);
    for (std::int64_t p = 0; p < f.npoints(); ++p) {
      const T* src = f.at_flat(p);
      T* dst = g.at(p);
      for (int i = 0; i < f.rows; ++i) dst[i] = src[size_t(i)];
    }
    return g;
  }
};

/// Sup-norm of the difference on the union box (absent values are zero).
inline double grid_sup_distance(const Grid<CD>& a, const Grid<CD>& b) {
  if (a.level != b.level || a.r != b.r) throw math_error("grid_sup_distance: mismatch");
  Box u = hull(a.box, b.box);
  double e = 0;
  for (std::int64_t f = 0; f < u.volume(); ++f) {
    Ix k = u.unflat(f);
    for (int c = 0; c < a.r; ++c) e = std::max(e, std::abs(a.value(k, c) - b.value(k, c)));
  }
  return e;
}

}  // namespace vecsub
