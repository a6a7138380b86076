#include "vecsub/scheme.hpp"

#include <cmath>
#include <sstream>

#include "vecsub/linalg.hpp"

namespace vecsub {

namespace {

// half-open invariant integer box: lo_i = floor(alo_i/(m-1)), hi_i =
// ceil(ahi_i/(m-1)) - 1 (upper faces excluded; continuous phi vanishes
// there, and for Haar-type filters this is the eigenvector convention)
Box invariant_box(const MatrixFilter<Rat>& a, const DilationSpec& spec) {
  if (a.box.empty) throw math_error("phi_integer_values: empty mask");
  Ix lo(a.d), hi(a.d);
  for (int i = 0; i < a.d; ++i) {
    auto fdiv = [](std::int64_t x, std::int64_t y) {
      return x >= 0 ? x / y : -(((-x) + y - 1) / y);
    };
    auto cdiv = [](std::int64_t x, std::int64_t y) {
      return x >= 0 ? (x + y - 1) / y : -((-x) / y);
    };
    lo[i] = fdiv(a.box.lo[i], spec.m - 1);
    hi[i] = cdiv(a.box.hi[i], spec.m - 1) - 1;
    if (hi[i] < lo[i]) hi[i] = lo[i];
  }
  return Box(lo, hi);
}

}  // namespace

Grid<Rat> phi_integer_values(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                             const MatchingJet& upsilon) {
  const int r = a.rows;
  Box B = invariant_box(a, spec);
  std::int64_t np = B.volume();
  std::int64_t dim = np * r;
  if (dim > 4000)
    throw resource_error("phi_integer_values: transition problem too large (" +
                         std::to_string(dim) + " unknowns)");

  // T[(j,i),(j',i')] = m^d a(m j - j')_{i,i'}
  Mat<Rat> TmI(static_cast<int>(dim), static_cast<int>(dim));
  Rat md(spec.coset_count());
  for (std::int64_t fj = 0; fj < np; ++fj) {
    Ix j = B.unflat(fj);
    Ix mj = std::int64_t(spec.m) * j;
    for (std::int64_t fj2 = 0; fj2 < np; ++fj2) {
      Ix j2 = B.unflat(fj2);
      Mat<Rat> av = a.value(mj - j2);
      for (int i = 0; i < r; ++i)
        for (int i2 = 0; i2 < r; ++i2) {
          Rat v = md * av.at(i, i2);
          if (sgn(v) != 0)
            TmI.at(int(fj * r + i), int(fj2 * r + i2)) += v;
        }
    }
  }
  for (int t = 0; t < int(dim); ++t) TmI.at(t, t) -= Rat(1);

  auto ns = null_space(TmI);
  if (ns.empty())
    throw math_error("phi_integer_values: eigenvalue 1 absent from the transition matrix");
  if (ns.size() > 1)
    throw math_error("phi_integer_values: eigenvalue 1 is degenerate on the transition matrix");

  // normalize: upsilon_hat(0) . sum_k v(k) = 1
  const auto& v = ns[0];
  Rat scale(0);
  for (std::int64_t fj = 0; fj < np; ++fj)
    for (int i = 0; i < r; ++i)
      scale += upsilon.jet.coeff[0].at(0, i) * v[size_t(fj * r + i)];
  if (sgn(scale) == 0)
    throw math_error("phi_integer_values: zero solution (upsilon_hat(0).sum v = 0)");

  Grid<Rat> g(0, spec.m, a.d, r, B);
  for (std::int64_t fj = 0; fj < np; ++fj)
    for (int i = 0; i < r; ++i) g.at(fj)[i] = v[size_t(fj * r + i)] / scale;
  return g;
}

RunResult run_scheme(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                     const MatrixFilter<Rat>& v, const MatrixFilter<Rat>& u, const Ix& mu,
                     int n, const MatchingJet& upsilon) {
  if (v.rows != 1 || v.cols != a.rows) throw math_error("run_scheme: data must be 1 x r");
  if (u.cols != 1 || u.rows != a.rows) throw math_error("run_scheme: u must be r x 1");
  auto beta = mom_membership(upsilon, u, mu);
  if (!beta) {
    auto viol = mom_first_violation(upsilon, u, mu);
    std::ostringstream os;
    os << "run_scheme: u is not in mom_{upsilon," << mu << "}";
    if (viol) os << " (jet order " << *viol << " violated)";
    throw math_error(os.str());
  }

  MatrixFilter<CD> vn = v.to_cd();
  MatrixFilter<CD> acd = a.to_cd();
  for (int i = 0; i < n; ++i) vn = subdivision_apply(acd, spec, vn);
  MatrixFilter<CD> w = convolve(vn, u.to_cd());
  double scale = std::pow(double(spec.m), double(mu.order()) * double(n));
  for (auto& x : w.data) x *= scale;

  RunResult res;
  res.grid = Grid<CD>::from_filter(w, n, spec.m);
  res.beta = *beta;
  res.mu = mu;
  res.level = n;
  {
    std::ostringstream os;
    os << "beta*d^" << mu << "(v*phi)(m^-" << n << " k), beta = " << rat_to_string(*beta);
    res.interpretation = os.str();
  }
  return res;
}

DrvResult drv_index(const MatchingJet& upsilon, const MatrixFilter<Rat>& u, const Ix& mu) {
  auto beta = mom_membership(upsilon, u, mu);
  if (!beta) throw math_error("drv_index: u is not in mom_{upsilon,mu}");
  std::int64_t ord = upsilon.order();
  Jet<Rat> p = jet_product(upsilon.jet, jet_at_zero(u, ord));
  Jet<Rat> target = *beta * monomial_jet<Rat>(upsilon.jet.d, mu, ord);
  DrvResult res;
  res.jet_order = ord;
  for (std::int64_t q = mu.order() + 1; q <= ord; ++q) {
    for (const Ix& nu : enumerate_multiindices(upsilon.jet.d, q)) {
      if (p.scalar(nu) != target.scalar(nu)) {
        res.value = int(q);
        return res;
      }
    }
  }
  res.unbounded = true;
  res.value = int(ord) + 1;
  return res;
}

RateReport measure_rate(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                        const MatrixFilter<Rat>& v, const MatrixFilter<Rat>& u, const Ix& mu,
                        const OracleGridFn& oracle, int n0, int n1, const MatchingJet& upsilon,
                        double sm_inf_hat) {
  RateReport rep;
  auto drv = drv_index(upsilon, u, mu);
  rep.drv = drv.value;
  rep.drv_unbounded = drv.unbounded;
  rep.sm_inf_hat = sm_inf_hat;
  rep.S = std::min(double(drv.value), sm_inf_hat) - double(mu.order());
  // the decay bound is established only for drv <= m+1, m < sm_inf <= m+1
  rep.outside_rate_hypothesis = double(drv.value) > std::ceil(sm_inf_hat);

  auto beta = mom_membership(upsilon, u, mu);
  if (!beta) throw math_error("measure_rate: membership failure");
  double b = beta->get_d();

  for (int n = n0; n <= n1; ++n) {
    RunResult run = run_scheme(a, spec, v, u, mu, n, upsilon);
    Grid<CD> target = oracle(n);
    for (auto& x : target.data) x *= b;
    rep.levels.push_back(n);
    rep.errors.push_back(grid_sup_distance(run.grid, target));
  }
  // fit decay exponent on log_m errors over the last >= 3 levels
  std::vector<double> lg;
  for (double e : rep.errors) lg.push_back(e > 0 ? std::log(e) / std::log(double(spec.m)) : -745);
  double maxerr = 0;
  for (double e : rep.errors) maxerr = std::max(maxerr, e);
  rep.errors_at_roundoff = maxerr < 1e-11;
  int N = int(lg.size());
  int lo = std::max(0, N - std::max(3, N / 2 + 1));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int i = lo; i < N; ++i) {
    double x = double(rep.levels[size_t(i)]);
    sx += x;
    sy += lg[size_t(i)];
    sxx += x * x;
    sxy += x * lg[size_t(i)];
    ++cnt;
  }
  double denom = double(cnt) * sxx - sx * sx;
  rep.fitted_exponent = denom != 0 ? -(double(cnt) * sxy - sx * sy) / denom : 0;
  rep.margin = rep.S - rep.fitted_exponent;
  return rep;
}

}  // namespace vecsub
