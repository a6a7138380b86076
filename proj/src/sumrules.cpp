#include "vecsub/sumrules.hpp"

#include <cmath>

namespace vecsub {

EigenReport check_eigen_condition(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                  int order_m) {
  if (a.rows != a.cols) throw math_error("check_eigen_condition: mask must be square");
  Mat<Rat> A0 = filter_sum(a);
  EigenReport rep;
  rep.charpoly = char_poly(A0);
  rep.one_multiplicity = root_multiplicity(rep.charpoly, Rat(1));
  rep.simple_one = (rep.one_multiplicity == 1);
  rep.eigenvalues = poly_roots(rep.charpoly);
  // remove the eigenvalues nearest to 1, exactly as many as the exact
  // multiplicity says, then take the max modulus of the rest
  std::vector<CD> rest = rep.eigenvalues;
  for (int t = 0; t < rep.one_multiplicity && !rest.empty(); ++t) {
    size_t best = 0;
    for (size_t i = 1; i < rest.size(); ++i)
      if (std::abs(rest[i] - CD(1, 0)) < std::abs(rest[best] - CD(1, 0))) best = i;
    rest.erase(rest.begin() + std::ptrdiff_t(best));
  }
  rep.max_other_modulus = 0;
  for (const CD& z : rest) rep.max_other_modulus = std::max(rep.max_other_modulus, std::abs(z));
  rep.threshold = std::pow(double(spec.m), -double(order_m));
  rep.condition_met =
      rep.simple_one && rep.max_other_modulus < rep.threshold - kEigenPad;
  rep.borderline = rep.simple_one && !rep.condition_met &&
                   rep.max_other_modulus < rep.threshold + kEigenPad;
  return rep;
}

MatchingJet matching_jet(const MatrixFilter<Rat>& a, const DilationSpec& spec, int order_m) {
  if (a.rows != a.cols) throw math_error("matching_jet: mask must be square");
  const int r = a.rows;
  Mat<Rat> A0 = filter_sum(a);
  auto cp = char_poly(A0);
  if (root_multiplicity(cp, Rat(1)) != 1)
    throw math_error("matching_jet: 1 is not a simple eigenvalue of ahat(0); "
                     "no unique matching direction");

  // left 1-eigenvector: null space of (A0 - I)^T
  Mat<Rat> M(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) M.at(i, j) = A0.at(j, i) - (i == j ? Rat(1) : Rat(0));
  auto ns = null_space(M);
  if (ns.size() != 1) throw math_error("matching_jet: unexpected eigenspace dimension");
  const auto& v0 = ns[0];
  int pinned = 0;
  while (pinned < r && sgn(v0[size_t(pinned)]) == 0) ++pinned;

  Jet<Rat> aj = jet_at_zero(a, order_m);
  MatchingJet mj;
  mj.jet = Jet<Rat>(a.d, 1, r, order_m);
  mj.pinned = pinned;
  for (int j = 0; j < r; ++j) mj.jet.coeff[0].at(0, j) = v0[size_t(j)];

  for (std::int64_t q = 1; q <= order_m; ++q) {
    // I - m^q A0
    Rat mq = int_pow(Rat(spec.m), q);
    Mat<Rat> B(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) B.at(i, j) = (i == j ? Rat(1) : Rat(0)) - mq * A0.at(i, j);
    auto Binv = invert_exact(B);
    if (!Binv) {
      mj.eigen_degree_limit = int(q);
      throw math_error("matching_jet: eigen condition violated at degree " +
                       std::to_string(q) + " (I - m^q ahat(0) singular)");
    }
    for (const Ix& mu : enumerate_multiindices(a.d, q)) {
      // rhs = sum_{nu<mu} binom(mu,nu) m^{|nu|} T_nu(u) T_{mu-nu}(a)
      Mat<Rat> rhs(1, r);
      for (size_t ni = 0; ni < mj.jet.mus.size(); ++ni) {
        const Ix& nu = mj.jet.mus[ni];
        if (nu.order() >= q || !leq(nu, mu)) continue;
        Rat c = Rat(binom_mi(mu, nu)) * int_pow(Rat(spec.m), nu.order());
        rhs = rhs + (mj.jet.coeff[ni] * aj.at(mu - nu)) * c;
      }
      mj.jet.at(mu) = rhs * (*Binv);
    }
  }
  return mj;
}

namespace {

// exact coset-form residual degrees: returns the smallest degree q <= order_m
// at which some coset condition fails, or order_m + 1 when all pass
std::int64_t coset_first_failure(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                 const Jet<Rat>& upsilon, std::int64_t order_m,
                                 std::optional<std::pair<Ix, Ix>>* witness) {
  Jet<Rat> ups_m = jet_scale_argument(upsilon.truncated(order_m), spec.m);
  Rat inv_md = ratq(1, spec.coset_count());
  std::int64_t first_fail = order_m + 1;
  for (const Ix& gamma : coset_reps(spec)) {
    auto piece = coset_piece(a, spec, gamma);
    Jet<Rat> pj = jet_scale_argument(jet_at_zero(piece, order_m), spec.m);
    RatVec gv;
    for (int i = 0; i < a.d; ++i) gv.emplace_back(gamma[i]);
    Jet<Rat> lhs = jet_product(character_jet(gv, order_m), jet_product(ups_m, pj));
    for (size_t mi = 0; mi < lhs.mus.size(); ++mi) {
      const Ix& mu = lhs.mus[mi];
      if (mu.order() >= first_fail) continue;
      Mat<Rat> want = upsilon.at(mu) * inv_md;
      if (!(lhs.coeff[mi] == want)) {
        first_fail = mu.order();
        if (witness) *witness = std::make_pair(gamma, mu);
      }
    }
  }
  return first_fail;
}

}  // namespace

SumRuleCheck check_sum_rules(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                             const MatchingJet& upsilon, int order_m, double float_tol) {
  if (upsilon.order() < order_m) throw math_error("check_sum_rules: jet order too low");
  SumRuleCheck out;
  std::optional<std::pair<Ix, Ix>> wit;
  std::int64_t ff = coset_first_failure(a, spec, upsilon.jet, order_m, &wit);
  out.ok = (ff > order_m);
  if (!out.ok) out.first_failure = wit;

  // omega form, float cross-check:
  // upsilon(m xi) ahat(xi + 2 pi omega) == delta(omega) upsilon(xi) + O^{m+1}
  Jet<CD> ups_cd = upsilon.jet.truncated(order_m).to_cd();
  Jet<CD> ups_m = jet_scale_argument(ups_cd, spec.m);
  bool omega_ok = true;
  double scale = 1.0;
  for (const auto& m0 : ups_cd.coeff)
    for (const auto& x : m0.a) scale = std::max(scale, std::abs(x));
  for (const RatVec& omega : omega_set(spec)) {
    bool zero_omega = true;
    for (const Rat& w : omega)
      if (sgn(w) != 0) zero_omega = false;
    Jet<CD> aj = jet_at_frequency(a, omega, order_m);
    Jet<CD> lhs = jet_product(ups_m, aj);
    for (size_t mi = 0; mi < lhs.mus.size(); ++mi) {
      for (int j = 0; j < lhs.cols; ++j) {
        CD want = zero_omega ? ups_cd.coeff[mi].at(0, j) : CD(0, 0);
        if (std::abs(lhs.coeff[mi].at(0, j) - want) > float_tol * scale) omega_ok = false;
      }
    }
  }
  out.omega_form_ok = omega_ok;
  return out;
}

SumRuleOrderResult sum_rule_order(const MatrixFilter<Rat>& a, const DilationSpec& spec,
                                  int max_order) {
  if (max_order < 1) throw math_error("sum_rule_order: cap must be >= 1");
  SumRuleOrderResult res;
  // extend the recursion as far as the cap (plus drv headroom) allows
  int target = max_order + 1;  // degrees 0..max_order-1 needed, +2 headroom
  MatchingJet mj;
  int reached = -1;
  for (int deg = target; deg >= 0; --deg) {
    try {
      mj = matching_jet(a, spec, deg);
      reached = deg;
      break;
    } catch (const math_error& e) {
      std::string msg = e.what();
      if (msg.find("simple eigenvalue") != std::string::npos) throw;  // hard error
      if (deg == 0) throw;
      // eigen degree limit hit; retry shorter
      res.eigen_limited = true;
      res.diagnostic = msg;
    }
  }
  std::int64_t ff = coset_first_failure(a, spec, mj.jet, reached, nullptr);
  // sum rules of order q hold for all q <= ff; the detectable order is
  // bounded by the jet length when the recursion stopped early
  int order = int(std::min<std::int64_t>(ff, max_order));
  if (res.eigen_limited && ff > reached) {
    order = int(std::min<std::int64_t>(reached + 1, max_order));
    res.diagnostic += "; order may be underestimated past degree " + std::to_string(reached);
  }
  if (ff > std::int64_t(max_order)) res.capped = !res.eigen_limited;
  mj.sr_order = order;
  res.order = order;
  res.jet = std::move(mj);
  if (res.order == 0)
    res.diagnostic += "; even order 1 fails (upsilon(0) ahat^[gamma] mismatch)";
  return res;
}

AdmissibilityReport verify_phi_admissibility(const Grid<CD>& phi, const MatchingJet& upsilon,
                                             int order_m, const std::vector<Ix>& freq_list,
                                             double tol) {
  AdmissibilityReport rep;
  rep.grid_coarse = phi.level < 3;
  const int d = phi.d;
  const int r = phi.r;
  if (upsilon.jet.cols != r) throw math_error("verify_phi_admissibility: shape mismatch");
  double h = 1.0;
  for (int i = 0; i < phi.level; ++i) h /= double(phi.m);
  double cell = std::pow(h, d);
  constexpr double two_pi = 6.283185307179586476925286766559;

  auto mus = multiindices_upto(d, order_m);
  for (const Ix& k : freq_list) {
    // d^beta phihat(2 pi k) ~ cell * sum_j phi(h j) (-i h j)^beta e^{-2 pi i k.(h j)}
    std::vector<Mat<CD>> dphi(mus.size(), Mat<CD>(r, 1));
    for (std::int64_t f = 0; f < phi.box.volume(); ++f) {
      Ix j = phi.box.unflat(f);
      const CD* pv = phi.at(f);
      double dot = 0;
      for (int i = 0; i < d; ++i) dot += double(k[i]) * (h * double(j[i]));
      CD phase = std::polar(1.0, -two_pi * dot);
      for (size_t mi = 0; mi < mus.size(); ++mi) {
        CD w(1, 0);
        for (int i = 0; i < d; ++i) w *= int_pow(CD(0, -1) * CD(h * double(j[i]), 0), mus[mi][i]);
        w *= phase * cell;
        for (int c = 0; c < r; ++c) dphi[mi].at(c, 0) += pv[c] * w;
      }
    }
    // d^nu [upsilon_hat phihat(. + 2 pi k)](0)
    //   = sum_{alpha<=nu} binom(nu,alpha) (-i)^{|alpha|} T_alpha(upsilon)
    //     d^{nu-alpha} phihat(2 pi k)
    for (const Ix& nu : mus) {
      CD acc(0, 0);
      for (size_t ai = 0; ai < mus.size(); ++ai) {
        const Ix& alpha = mus[ai];
        if (!leq(alpha, nu)) continue;
        CD ipow(1, 0);
        for (std::int64_t t = 0; t < alpha.order(); ++t) ipow *= CD(0, -1);
        CD b = CD(double(binom_mi(nu, alpha)), 0) * ipow;
        const Mat<Rat>& tu = upsilon.jet.at(alpha);
        const Mat<CD>& dp = dphi[size_t(mus_index(mus, nu - alpha))];
        for (int c = 0; c < r; ++c) acc += b * to_cd(tu.at(0, c)) * dp.at(c, 0);
      }
      double want = (k.is_zero() && nu.is_zero()) ? 1.0 : 0.0;
      AdmissibilityItem item{k, nu, std::abs(acc - CD(want, 0))};
      rep.max_deviation = std::max(rep.max_deviation, item.deviation);
      rep.items.push_back(item);
    }
  }
  (void)tol;
  return rep;
}

}  // namespace vecsub
