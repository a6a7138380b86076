#include "vecsub/transform.hpp"

#include <sstream>

#include "vecsub/smoothness.hpp"
#include "vecsub/spaces.hpp"

namespace vecsub {

namespace {

// exact determinant of a square matrix of scalar Laurent polynomials,
// cofactor expansion along the first row (r is small)
MatrixFilter<Rat> filter_det(const MatrixFilter<Rat>& U) {
  const int n = U.rows;
  if (n == 1) {
    MatrixFilter<Rat> out(U.d, 1, 1, U.box);
    for (std::int64_t f = 0; f < U.npoints(); ++f) out.at_flat(f)[0] = U.at_flat(f)[0];
    out.trim();
    return out;
  }
  MatrixFilter<Rat> acc(U.d, 1, 1);
  for (int j = 0; j < n; ++j) {
    // entry (0, j) as scalar filter
    MatrixFilter<Rat> e(U.d, 1, 1, U.box);
    bool nz = false;
    for (std::int64_t f = 0; f < U.npoints(); ++f) {
      const Rat& v = U.at_flat(f)[size_t(j)];
      e.at_flat(f)[0] = v;
      if (sgn(v) != 0) nz = true;
    }
    if (!nz) continue;
    e.trim();
    // minor without row 0 and column j
    MatrixFilter<Rat> sub(U.d, n - 1, n - 1, U.box);
    for (std::int64_t f = 0; f < U.npoints(); ++f) {
      const Rat* src = U.at_flat(f);
      Rat* dst = sub.at_flat(f);
      for (int i = 1; i < n; ++i) {
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          dst[size_t(i - 1) * size_t(n - 1) + size_t(cc++)] = src[size_t(i) * size_t(n) + size_t(c)];
        }
      }
    }
    sub.trim();
    MatrixFilter<Rat> term = convolve(e, filter_det(sub));
    if (j % 2 == 1) term = Rat(-1) * term;
    acc = acc.box.empty ? term : acc + term;
  }
  acc.trim();
  return acc;
}

// minor determinant with row i and column j removed
MatrixFilter<Rat> filter_minor(const MatrixFilter<Rat>& U, int i, int j) {
  const int n = U.rows;
  MatrixFilter<Rat> sub(U.d, n - 1, n - 1, U.box);
  for (std::int64_t f = 0; f < U.npoints(); ++f) {
    const Rat* src = U.at_flat(f);
    Rat* dst = sub.at_flat(f);
    int rr = 0;
    for (int r0 = 0; r0 < n; ++r0) {
      if (r0 == i) continue;
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        dst[size_t(rr) * size_t(n - 1) + size_t(cc++)] = src[size_t(r0) * size_t(n) + size_t(c)];
      }
      ++rr;
    }
  }
  sub.trim();
  return filter_det(sub);
}

}  // namespace

std::optional<StrongFilter> verify_strong(const MatrixFilter<Rat>& U) {
  if (U.rows != U.cols) throw math_error("verify_strong: not square");
  MatrixFilter<Rat> det = filter_det(U);
  det.trim();
  if (det.box.empty) return std::nullopt;  // det == 0
  int terms = 0;
  Ix k(U.d);
  Rat c0;
  for (std::int64_t f = 0; f < det.npoints(); ++f) {
    const Rat& v = det.at_flat(f)[0];
    if (sgn(v) != 0) {
      ++terms;
      k = det.box.unflat(f);
      c0 = v;
    }
  }
  if (terms != 1) return std::nullopt;
  StrongFilter sf;
  sf.U = U;
  sf.det_c0 = c0;
  sf.det_k = k;
  const int n = U.rows;
  // inverse = adj / det: adj_{ij} = (-1)^{i+j} minor_{ji}; dividing by
  // c0 e^{-i k.xi} shifts indices by -k and scales by 1/c0
  MatrixFilter<Rat> inv(U.d, n, n);
  if (n == 1) {
    inv.set_entry(Ix(U.d) - k, 0, 0, Rat(1) / c0);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        MatrixFilter<Rat> mj = filter_minor(U, j, i);
        Rat sgn_ij = ((i + j) % 2 == 0) ? Rat(1) : Rat(-1);
        for (std::int64_t f = 0; f < mj.npoints(); ++f) {
          Ix p = mj.box.unflat(f);
          Rat v = mj.at_flat(f)[0];
          if (sgn(v) != 0) inv.add_entry(p - k, i, j, sgn_ij * v / c0);
        }
      }
  }
  inv.trim();
  // round-trip invariant
  if (!(convolve(U, inv) == MatrixFilter<Rat>::delta(U.d, n)))
    throw math_error("verify_strong: inverse round-trip failed");
  sf.inverse = std::move(inv);
  return sf;
}

StrongFilter column_reduce_matching(const MatchingJet& upsilon, int order_m) {
  const int d = upsilon.jet.d;
  const int r = upsilon.jet.cols;
  const int p = upsilon.pinned;
  if (upsilon.order() < order_m) throw math_error("column_reduce_matching: jet too short");
  MatrixFilter<Rat> U(d, r, r);
  U.set_entry(Ix(d), p, 0, Rat(1));  // first output column selects the pivot
  Jet<Rat> piv = upsilon.jet.component(0, p).truncated(order_m);
  int col = 1;
  for (int l = 0; l < r; ++l) {
    if (l == p) continue;
    Jet<Rat> bj = jet_divide(upsilon.jet.component(0, l).truncated(order_m), piv);
    MatrixFilter<Rat> b = filter_with_jet(bj);
    U.set_entry(Ix(d), l, col, Rat(1));
    for (std::int64_t f = 0; f < b.npoints(); ++f) {
      Ix k = b.box.unflat(f);
      Rat v = b.at_flat(f)[0];
      if (sgn(v) != 0) U.add_entry(k, p, col, -v);
    }
    ++col;
  }
  auto sf = verify_strong(U);
  if (!sf) throw math_error("column_reduce_matching: reduction not strongly invertible");
  return *sf;
}

MatrixFilter<Rat> transform_filter(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                   const StrongFilter& U) {
  if (a.rows != U.U.rows) throw math_error("transform_filter: shape mismatch");
  return convolve(upsample(U.inverse, spec.m), convolve(a, U.U));
}

InvarianceReport invariance_suite(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                  const StrongFilter& U, int order_m, int n_levels,
                                  int sm_nmax, double sm_tol) {
  InvarianceReport rep;
  MatrixFilter<Rat> at = transform_filter(a, spec, U);

  auto sra = sum_rule_order(a, spec, std::max(order_m + 2, 8));
  auto srt = sum_rule_order(at, spec, std::max(order_m + 2, 8));
  rep.order_a = sra.order;
  rep.order_transformed = srt.order;
  rep.sum_rule_order_equal = (sra.order == srt.order);

  // finite-n identity: [S^n_a (delta I)] * (U*w) ==
  //   upsample(U, m^n) * ([S^n_at (delta I)] * w), exact in rationals
  rep.finite_n_identity = true;
  const int r = a.rows;
  std::vector<MatrixFilter<Rat>> probes;
  probes.push_back(MatrixFilter<Rat>::delta_col(a.d, r, 0));
  if (r > 1) probes.push_back(MatrixFilter<Rat>::delta_col(a.d, r, r - 1));
  {
    Ix e1(a.d);
    e1[0] = 1;
    auto w = MatrixFilter<Rat>::delta_col(a.d, r, 0);
    probes.push_back(w - shift(w, e1));
  }
  for (const auto& w : probes) {
    std::int64_t stride = 1;
    for (int n = 1; n <= n_levels; ++n) {
      stride *= spec.m;
      auto lhs = subdivision_power_convolved(a, spec, convolve(U.U, w), n);
      auto rhs_core = subdivision_power_convolved(at, spec, w, n);
      auto rhs = convolve(upsample(U.U, stride), rhs_core);
      if (!(lhs == rhs)) rep.finite_n_identity = false;
    }
  }

  auto sma = sm_estimate(a, spec, 0, sm_nmax);
  auto smt = sm_estimate(at, spec, 0, sm_nmax);
  rep.sm_delta = std::abs(sma.sm_hat - smt.sm_hat);
  rep.sm_close = rep.sm_delta <= sm_tol;
  return rep;
}

}  // namespace vecsub
