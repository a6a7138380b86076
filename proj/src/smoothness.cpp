#include "vecsub/smoothness.hpp"

#include <cmath>

namespace vecsub {

int default_nmax(int d) { return d <= 1 ? 16 : 8; }

namespace {

double window_slope(const std::vector<double>& logs, int lo, int hi) {
  // least-squares slope of logs[n] against n over indices [lo, hi]
  int n = hi - lo + 1;
  if (n < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = lo; i <= hi; ++i) {
    double x = double(i);
    sx += x;
    sy += logs[size_t(i)];
    sxx += x * x;
    sxy += x * logs[size_t(i)];
  }
  double denom = double(n) * sxx - sx * sx;
  return (double(n) * sxy - sx * sy) / denom;
}

// exact p-norm comparison payload: p=inf -> max |entry|; p=1 -> sum |entry|;
// p=2 -> sum of squares (all exact rationals, |.| on rationals)
Rat exact_norm_payload(const MatrixFilter<Rat>& f, int p) {
  Rat acc(0);
  bool first = true;
  for (const Rat& x : f.data) {
    Rat m = abs(x);
    if (p == 1) acc += m;
    else if (p == 2) acc += m * m;
    else {
      if (first || m > acc) acc = m;
      first = false;
    }
  }
  return acc;
}

}  // namespace

RhoEstimate rho_estimate(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                         const MatchingJet& upsilon, int m, int p, int n_max) {
  if (n_max < 3) throw math_error("rho_estimate: n_max must be >= 3");
  if (m >= 1 && upsilon.order() < m - 1)
    throw math_error("rho_estimate: jet order below m-1 (generator division needs it)");
  GeneratorSet gens = vmy_generators(upsilon, m);

  RhoEstimate est;
  est.p = p;
  est.m = m;
  est.generator_labels = gens.labels;
  est.s.assign(gens.items.size(), {});
  est.fit.assign(gens.items.size(), 0.0);

  // exact flatness probe over a short prefix (p-norm payloads compared as
  // rationals); detects the telescoping rho = 1 generators exactly
  const int n_exact = std::min(4, n_max);
  std::vector<bool> flat(gens.items.size(), false);
  for (size_t gi = 0; gi < gens.items.size(); ++gi) {
    std::vector<Rat> payloads;
    MatrixFilter<Rat> u = gens.items[gi];
    std::int64_t stride = 1;
    bool capped = false;
    for (int n = 1; n <= n_exact; ++n) {
      try {
        u = stride_conv_left(a, u, stride, Rat(spec.coset_count()));
      } catch (const resource_error&) {
        capped = true;
        break;
      }
      stride *= spec.m;
      payloads.push_back(exact_norm_payload(u, p));
    }
    if (capped || payloads.size() < 2) continue;
    bool f = sgn(payloads[0]) != 0;
    for (size_t i = 1; i < payloads.size(); ++i)
      if (payloads[i] != payloads[0]) f = false;
    flat[gi] = f;
  }

  MatrixFilter<CD> acd = a.to_cd();
  CD md(spec.md(), 0);
  double rho_max = 0;
  int n_reached = n_max;
  double max_fit_prev = 0, max_fit_cur = 0;
  std::vector<std::vector<double>> logs(gens.items.size());

  for (size_t gi = 0; gi < gens.items.size(); ++gi) {
    MatrixFilter<CD> u = gens.items[gi].to_cd();
    std::int64_t stride = 1;
    for (int n = 1; n <= n_max; ++n) {
      try {
        u = stride_conv_left(acd, u, stride, md);
      } catch (const resource_error&) {
        est.resource_capped = true;
        n_reached = std::min(n_reached, n - 1);
        break;
      }
      stride *= spec.m;
      est.s[gi].push_back(filter_norm(u, p));
    }
  }
  for (size_t gi = 0; gi < gens.items.size(); ++gi)
    n_reached = std::min(n_reached, int(est.s[gi].size()));
  est.n_used = n_reached;
  if (n_reached < 3) {
    est.stabilized = false;
    est.rho_hat = 0;
    return est;
  }

  int W = (n_reached + 1) / 2;  // ceil(n/2)
  if (W < 2) W = 2;
  for (size_t gi = 0; gi < gens.items.size(); ++gi) {
    auto& sv = est.s[gi];
    std::vector<double> lg(size_t(n_reached), 0.0);
    bool zero_seq = true;
    for (int n = 0; n < n_reached; ++n) {
      if (sv[size_t(n)] > 0) zero_seq = false;
      lg[size_t(n)] = sv[size_t(n)] > 0 ? std::log(sv[size_t(n)]) : -745.0;
    }
    if (zero_seq) {
      est.fit[gi] = 0;
      continue;
    }
    double slope_cur = window_slope(lg, n_reached - W, n_reached - 1);
    double slope_prev = window_slope(lg, std::max(0, n_reached - W - 1), n_reached - 2);
    double rho = std::exp(slope_cur);
    est.fit[gi] = rho;
    if (rho > rho_max) {
      rho_max = rho;
      max_fit_cur = slope_cur;
      max_fit_prev = slope_prev;
    }
  }
  est.rho_hat = rho_max;
  est.window_delta = std::abs(std::exp(max_fit_cur) - std::exp(max_fit_prev));
  est.stabilized = est.window_delta < 0.05;
  // the estimate is exactly flat when a generator with exactly constant
  // iterates attains the max
  for (size_t gi = 0; gi < gens.items.size(); ++gi)
    if (flat[gi] && est.fit[gi] >= rho_max - 1e-9) est.exactly_flat = true;
  return est;
}

SmEntry sm_estimate(const MatrixFilter<Rat>& a, const DilationSpec& spec, int p, int n_max) {
  if (n_max <= 0) n_max = default_nmax(spec.d);
  auto sr = sum_rule_order(a, spec);
  if (sr.order < 1)
    throw math_error("sm_estimate: no sum rules of order 1 (" + sr.diagnostic + ")");
  SmEntry e;
  e.p = p;
  e.sum_rule_order = sr.order;
  e.rho = rho_estimate(a, spec, sr.jet, sr.order, p, n_max);
  double dp = (p == 0) ? 0.0 : double(spec.d) / double(p);
  e.sm_hat = dp - std::log(e.rho.rho_hat) / std::log(double(spec.m));
  e.stabilized = e.rho.stabilized;
  return e;
}

std::pair<double, double> sm_infty_interval(double sm2, int d) {
  return {sm2 - double(d) / 2.0, sm2};
}

ConvergenceReport convergence_check(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                    int target_m, int n_max) {
  if (n_max <= 0) n_max = default_nmax(spec.d);
  ConvergenceReport rep;

  SumRuleOrderResult sr;
  try {
    sr = sum_rule_order(a, spec);
  } catch (const math_error& e) {
    rep.verdict = Verdict::NOT_CONVERGENT;
    rep.reason = std::string("sum-rule analysis failed: ") + e.what();
    return rep;
  }
  rep.sum_rule_order = sr.order;
  if (sr.order < target_m + 1) {
    rep.verdict = Verdict::NOT_CONVERGENT;
    rep.reason = "sum-rule order " + std::to_string(sr.order) + " < required " +
                 std::to_string(target_m + 1);
    return rep;
  }

  EigenReport er = check_eigen_condition(a, spec, target_m);
  rep.eigen_ok = er.condition_met;
  if (!er.simple_one) {
    rep.verdict = Verdict::NOT_CONVERGENT;
    rep.reason = "1 is not a simple eigenvalue of ahat(0)";
    return rep;
  }
  if (!er.condition_met && !er.borderline) {
    rep.verdict = Verdict::NOT_CONVERGENT;
    rep.reason = "an eigenvalue of ahat(0) has modulus " +
                 std::to_string(er.max_other_modulus) + " >= m^-" + std::to_string(target_m);
    return rep;
  }

  auto inf_est = sm_estimate(a, spec, 0, n_max);
  rep.sm_inf_hat = inf_est.sm_hat;
  auto l2_est = sm_estimate(a, spec, 2, n_max);
  rep.sm2_hat = l2_est.sm_hat;
  rep.sm_inf_lower_from_2 = sm_infty_interval(l2_est.sm_hat, spec.d).first;
  rep.stabilized = inf_est.stabilized || l2_est.stabilized;

  if (inf_est.rho.exactly_flat && inf_est.rho.rho_hat > 1.0 - 1e-6 && target_m >= 0) {
    // iterates do not decay at all: sm_inf <= 0 <= target
    rep.verdict = Verdict::NOT_CONVERGENT;
    rep.reason = "difference iterates are exactly flat (rho = 1, sm_inf = " +
                 std::to_string(rep.sm_inf_hat) + " <= " + std::to_string(target_m) + ")";
    return rep;
  }

  bool direct = inf_est.stabilized && rep.sm_inf_hat > double(target_m);
  bool via2 = l2_est.stabilized && rep.sm_inf_lower_from_2 > double(target_m);
  if (direct || via2) {
    rep.verdict = Verdict::CONVERGENT;
    rep.reason = direct ? "sm_inf estimate exceeds target" : "sm_2 lower bound exceeds target";
    return rep;
  }
  rep.verdict = Verdict::INCONCLUSIVE;
  rep.reason = "estimates do not separate from the target (sm_inf_hat = " +
               std::to_string(rep.sm_inf_hat) + ", lower-from-2 = " +
               std::to_string(rep.sm_inf_lower_from_2) + ")";
  return rep;
}

}  // namespace vecsub
