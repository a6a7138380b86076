#pragma once

#include <vector>

#include "vecsub/base.hpp"

namespace vecsub {

/// Small dense matrix over an exact or float scalar.
template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), scalar_traits<T>::zero()) {}

  T& at(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
  const T& at(int i, int j) const { return a[size_t(i) * size_t(cols) + size_t(j)]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = scalar_traits<T>::one();
    return m;
  }

  bool is_zero() const {
    for (const auto& x : a)
      if (!scalar_traits<T>::is_zero(x)) return false;
    return true;
  }

  Mat operator*(const Mat& o) const {
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const T& v = at(i, k);
        if (scalar_traits<T>::is_zero(v)) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
      }
    return r;
  }
  Mat operator+(const Mat& o) const {
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
  }
  Mat operator*(const T& s) const {
    Mat r = *this;
    for (auto& x : r.a) x *= s;
    return r;
  }
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  Mat<CD> to_cd() const {
    Mat<CD> r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = scalar_traits<T>::to_cd(a[i]);
    return r;
  }
};

}  // namespace vecsub
