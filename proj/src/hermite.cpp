#include "vecsub/hermite.hpp"

#include <algorithm>
#include <cmath>

#include "vecsub/linalg.hpp"
#include "vecsub/smoothness.hpp"

namespace vecsub {

LambdaMatch lambda_matching_check(const MatchingJet& upsilon, const HermiteType& type) {
  LambdaMatch res;
  const int r = type.r();
  const int d = upsilon.jet.d;
  if (upsilon.jet.cols != r) throw math_error("lambda_matching_check: shape mismatch");
  if (upsilon.order() < type.mtilde)
    throw math_error("lambda_matching_check: jet order below mtilde");
  // shared scalar jet chat taken from the first component (nu^1 = 0); every
  // component must equal chat (i xi)^{nu^l} through the full jet order
  Jet<Rat> c = upsilon.jet.component(0, 0);
  if (sgn(c.coeff[0].at(0, 0)) == 0) return res;
  std::int64_t ord = upsilon.order();
  for (int l = 0; l < r; ++l) {
    const Ix& nul = type.lambda[size_t(l)];
    Jet<Rat> want = jet_product(c, monomial_jet<Rat>(d, nul, ord));
    for (const Ix& nu : multiindices_upto(d, ord))
      if (upsilon.jet.at(nu).at(0, l) != want.scalar(nu)) return res;
  }
  res.ok = true;
  res.scale = c.coeff[0].at(0, 0);
  return res;
}

namespace {

// Try to find an order mtilde+1 matching jet with the prescribed Lambda form
// (scale pinned to 1) when ahat(0) has a degenerate eigenvalue 1: linear
// solve of the coset sum-rule conditions in the free jet coefficients.
std::optional<MatchingJet> lambda_constrained_jet(const MatrixFilter<Rat>& a,
                                                  const DilationSpec& spec,
                                                  const HermiteType& type) {
  const int d = a.d;
  const int r = a.rows;
  const int ord = type.mtilde;
  auto mus = multiindices_upto(d, ord);
  const int nm = int(mus.size());

  // unknown layout: x[(mi, l)]; prescribed entries fixed
  std::vector<std::optional<Rat>> fixed(size_t(nm * r));
  for (int l = 0; l < r; ++l) {
    const Ix& nul = type.lambda[size_t(l)];
    for (int mi = 0; mi < nm; ++mi) {
      if (mus[size_t(mi)].order() > nul.order()) continue;
      Rat v(0);
      if (mus[size_t(mi)] == nul) {
        v = Rat(factorial_mi(nul));
        if (nul.order() % 2 == 1) v = -v;
      }
      fixed[size_t(mi * r + l)] = v;
    }
  }

  // condition per coset gamma and per mu:
  //   T_mu[e^{-i gamma xi} ups(m xi) piece(m xi)] = m^{-d} T_mu[ups]
  // LHS is linear in T_nu(ups): coefficient of T_nu(ups)_t is
  //   sum_{alpha + nu + beta = mu partition} binom-weights gamma^alpha
  //   m^{|nu|} m^{|beta|} T_beta(piece)_{t,l-col}...
  // assemble by expanding the triple Leibniz product exactly.
  std::vector<std::vector<Rat>> rows;  // each row: nm*r coeffs then rhs
  auto reps = coset_reps(spec);
  Rat inv_md = ratq(1, spec.coset_count());
  for (const Ix& gamma : reps) {
    auto piece = coset_piece(a, spec, gamma);
    Jet<Rat> pj = jet_scale_argument(jet_at_zero(piece, ord), spec.m);
    RatVec gv;
    for (int i = 0; i < d; ++i) gv.emplace_back(gamma[i]);
    Jet<Rat> ch = character_jet(gv, ord);
    for (int mi = 0; mi < nm; ++mi) {
      const Ix& mu = mus[size_t(mi)];
      for (int col = 0; col < r; ++col) {
        std::vector<Rat> row(size_t(nm * r + 1), Rat(0));
        // T_mu(prod)_col = sum_{alpha<=mu} binom(mu,alpha) gamma^alpha *
        //   sum_{nu<=mu-alpha} binom(mu-alpha,nu) m^{|nu|} T_nu(ups)_t *
        //     T_{mu-alpha-nu}(piece)_{t,col} m^{|mu-alpha-nu|}
        for (int ai = 0; ai < nm; ++ai) {
          const Ix& alpha = mus[size_t(ai)];
          if (!leq(alpha, mu)) continue;
          Rat ca = Rat(binom_mi(mu, alpha)) * ch.coeff[size_t(ai)].at(0, 0);
          if (sgn(ca) == 0) continue;
          Ix rem = mu - alpha;
          for (int ni = 0; ni < nm; ++ni) {
            const Ix& nu = mus[size_t(ni)];
            if (!leq(nu, rem)) continue;
            Rat cn = ca * Rat(binom_mi(rem, nu)) * int_pow(Rat(spec.m), nu.order());
            const Mat<Rat>& pb = pj.at(rem - nu);  // already carries m^{|beta|}
            for (int t = 0; t < r; ++t) {
              Rat w = cn * pb.at(t, col);
              if (sgn(w) != 0) row[size_t(ni * r + t)] += w;
            }
          }
        }
        // rhs side: m^{-d} T_mu(ups)_col moves to the left
        row[size_t(mi * r + col)] -= inv_md;
        rows.push_back(std::move(row));
      }
    }
  }
  // substitute prescribed values, collect free unknowns
  std::vector<int> free_idx;
  for (int i = 0; i < nm * r; ++i)
    if (!fixed[size_t(i)]) free_idx.push_back(i);
  int nf = int(free_idx.size());
  Mat<Rat> A(int(rows.size()), std::max(nf, 1));
  std::vector<Rat> b(rows.size(), Rat(0));
  for (size_t ri = 0; ri < rows.size(); ++ri) {
    Rat rhs(0);
    for (int i = 0; i < nm * r; ++i) {
      if (fixed[size_t(i)]) rhs -= rows[ri][size_t(i)] * (*fixed[size_t(i)]);
    }
    b[ri] = rhs;
    for (int fi = 0; fi < nf; ++fi) A.at(int(ri), fi) = rows[ri][size_t(free_idx[size_t(fi)])];
  }
  // least-structure solve: eliminate [A|b]; inconsistent -> nullopt
  Mat<Rat> Ab(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) Ab.at(i, j) = A.at(i, j);
    Ab.at(i, A.cols) = b[size_t(i)];
  }
  // gaussian elimination on Ab
  int row0 = 0;
  std::vector<int> pivcol;
  for (int col = 0; col < A.cols && row0 < Ab.rows; ++col) {
    int p = -1;
    for (int i = row0; i < Ab.rows; ++i)
      if (sgn(Ab.at(i, col)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j <= A.cols; ++j) std::swap(Ab.at(p, j), Ab.at(row0, j));
    Rat inv = Rat(1) / Ab.at(row0, col);
    for (int j = col; j <= A.cols; ++j) Ab.at(row0, j) *= inv;
    for (int i = 0; i < Ab.rows; ++i) {
      if (i == row0) continue;
      Rat f = Ab.at(i, col);
      if (sgn(f) == 0) continue;
      for (int j = col; j <= A.cols; ++j) Ab.at(i, j) -= f * Ab.at(row0, j);
    }
    pivcol.push_back(col);
    ++row0;
  }
  for (int i = row0; i < Ab.rows; ++i)
    if (sgn(Ab.at(i, A.cols)) != 0) return std::nullopt;  // inconsistent
  std::vector<Rat> x(size_t(nf), Rat(0));
  for (int i = 0; i < int(pivcol.size()); ++i) x[size_t(pivcol[size_t(i)])] = Ab.at(i, A.cols);

  MatchingJet mj;
  mj.jet = Jet<Rat>(d, 1, r, ord);
  mj.pinned = 0;
  for (int mi = 0; mi < nm; ++mi)
    for (int l = 0; l < r; ++l) {
      size_t idx = size_t(mi * r + l);
      Rat v = fixed[idx] ? *fixed[idx] : Rat(0);
      if (!fixed[idx]) {
        auto it = std::find(free_idx.begin(), free_idx.end(), mi * r + l);
        v = x[size_t(it - free_idx.begin())];
      }
      mj.jet.coeff[size_t(mi)].at(0, l) = v;
    }
  return mj;
}

}  // namespace

GhsdVerdict ghsd_convergence_check(const MatrixFilter<Rat>& a, const HermiteType& type, int m,
                                   int n_max) {
  if (a.rows != type.r()) throw math_error("ghsd_convergence_check: r mismatch");
  if (m < type.mtilde) throw math_error("ghsd_convergence_check: m below mtilde");
  DilationSpec spec(2, a.d);
  if (n_max <= 0) n_max = default_nmax(a.d);
  GhsdVerdict v;
  v.stability_assumption_flag = true;  // stability of integer shifts is not verifiable here

  Mat<Rat> A0 = filter_sum(a);
  auto cp = char_poly(A0);
  int mult1 = root_multiplicity(cp, Rat(1));
  if (mult1 == 0) {
    v.kind = GhsdKind::NECESSARY_FAIL;
    v.reason = "1 is not an eigenvalue of ahat(0)";
    return v;
  }
  // 2^n eigenvalue obstruction of the necessary spectral condition
  for (const CD& z : poly_roots(cp)) {
    double mod = std::abs(z);
    if (mod > 1.5) {
      double lg = std::log2(mod);
      if (std::abs(lg - std::round(lg)) < 1e-9 && std::abs(z.imag()) < 1e-9 &&
          z.real() > 0) {
        // verify exactly
        Rat cand = int_pow(Rat(2), std::int64_t(std::llround(lg)));
        if (root_multiplicity(cp, cand) > 0) {
          v.kind = GhsdKind::NECESSARY_FAIL;
          v.reason = "2^n is an eigenvalue of ahat(0)";
          return v;
        }
      }
    }
  }

  MatchingJet mj;
  bool have_jet = false;
  if (mult1 == 1) {
    // include headroom beyond mtilde so the Lambda form is checked through
    // the orders where balanced-type jets deviate
    try {
      mj = matching_jet(a, spec, std::max(type.mtilde + 2, m));
      have_jet = true;
    } catch (const math_error& e) {
      v.kind = GhsdKind::INCONCLUSIVE;
      v.reason = std::string("matching jet unavailable: ") + e.what();
      return v;
    }
    auto lm = lambda_matching_check(mj, type);
    if (!lm.ok) {
      v.kind = GhsdKind::NECESSARY_FAIL;
      v.reason = "the (unique) matching jet does not have the prescribed Lambda form";
      return v;
    }
    auto sr = check_sum_rules(a, spec, mj, type.mtilde);
    if (!sr.ok) {
      v.kind = GhsdKind::NECESSARY_FAIL;
      v.reason = "order mtilde+1 sum rules fail";
      return v;
    }
  } else {
    auto cj = lambda_constrained_jet(a, spec, type);
    if (!cj) {
      v.kind = GhsdKind::INCONCLUSIVE;
      v.reason = "eigenvalue 1 degenerate and no Lambda-form matching jet exists";
      return v;
    }
    mj = *cj;
    mj.sr_order = type.mtilde + 1;
    have_jet = true;
  }
  (void)have_jet;

  RhoEstimate rho = rho_estimate(a, spec, mj, type.mtilde + 1, 0, n_max);
  double sm = -std::log(rho.rho_hat) / std::log(2.0);
  if (rho.exactly_flat) sm = 0.0;  // rho = 1 exactly: no decay at all
  v.sm_inf_hat = sm;
  constexpr double kSeparation = 0.02;  // estimator noise floor
  if (rho.stabilized && !rho.exactly_flat && sm > double(type.mtilde) + kSeparation) {
    if (m == type.mtilde || sm > double(m) + kSeparation) {
      v.kind = GhsdKind::SUFFICIENT;
      v.reason = "Lambda form holds and sm_inf estimate exceeds the threshold";
      return v;
    }
    v.kind = GhsdKind::INCONCLUSIVE;
    v.reason = "phi in C^m beyond the estimate cannot be certified";
    return v;
  }
  v.kind = GhsdKind::INCONCLUSIVE;
  v.reason = "sm_inf(a) estimate does not exceed mtilde (" + std::to_string(sm) + ")";
  return v;
}

std::vector<Grid<CD>> run_hermite(const MatrixFilter<Rat>& a, const HermiteType& type,
                                  const MatrixFilter<Rat>& v, int n) {
  DilationSpec spec(2, a.d);
  if (v.rows != 1 || v.cols != a.rows) throw math_error("run_hermite: data must be 1 x r");
  MatrixFilter<CD> vn = v.to_cd();
  MatrixFilter<CD> acd = a.to_cd();
  for (int i = 0; i < n; ++i) vn = subdivision_apply(acd, spec, vn);
  std::vector<Grid<CD>> out;
  for (int l = 0; l < type.r(); ++l) {
    MatrixFilter<CD> comp(vn.d, 1, 1, vn.box);
    double scale = std::pow(2.0, double(type.lambda[size_t(l)].order()) * double(n));
    for (std::int64_t f = 0; f < vn.npoints(); ++f)
      comp.at_flat(f)[0] = vn.at_flat(f)[size_t(l)] * scale;
    comp.trim();
    out.push_back(Grid<CD>::from_filter(comp, n, 2));
  }
  return out;
}

}  // namespace vecsub
