#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vecsub/constructions.hpp"
#include "vecsub/hermite.hpp"
#include "vecsub/io.hpp"
#include "vecsub/oracle.hpp"
#include "vecsub/scheme.hpp"
#include "vecsub/smoothness.hpp"
#include "vecsub/transform.hpp"

using namespace vecsub;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitMath = 3;
constexpr int kExitResource = 4;
constexpr int kExitStrictInconclusive = 5;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string filter_hash(const MatrixFilter<Rat>& f) {
  std::ostringstream os;
  write_filter(os, f);
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(os.str());
  return hex.str();
}

MatrixFilter<Rat> load_mask(const std::string& path) {
  auto a = read_rational_filter_file(path);
  if (a.rows != a.cols) throw math_error(path + ": mask must be square");
  return a;
}

const std::vector<IMat>& named_group(const std::string& name) {
  const auto& g = builtin_groups();
  if (name == "D4") return g.D4;
  if (name == "D6") return g.D6;
  if (name == "H") return g.H;
  throw parse_error("unknown symmetry group '" + name + "' (expected D4, D6 or H)");
}

std::vector<RatVec> parse_centers(const std::string& text, int d) {
  std::vector<RatVec> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ';')) {
    if (tok.empty()) continue;
    std::string s;
    for (char c : tok)
      if (c != '(' && c != ')' && !isspace(static_cast<unsigned char>(c))) s += c;
    RatVec v;
    std::istringstream cs(s);
    std::string num;
    while (std::getline(cs, num, ',')) v.push_back(parse_rational(num));
    if (int(v.size()) != d)
      throw parse_error("center '" + tok + "' needs " + std::to_string(d) + " coordinates");
    out.push_back(std::move(v));
  }
  return out;
}

IMat parse_lattice_matrix(const std::string& text, int d) {
  if (text == "quincunx") return quincunx_matrix();
  if (text == "sqrt3") return sqrt3_matrix();
  // "a,b;c,d" row-wise
  IMat N(d);
  std::istringstream is(text);
  std::string row;
  int i = 0;
  while (std::getline(is, row, ';')) {
    std::istringstream rs(row);
    std::string v;
    int j = 0;
    while (std::getline(rs, v, ',')) {
      if (i >= d || j >= d) throw parse_error("lattice matrix has too many entries");
      N.at(i, j++) = std::stoll(v);
    }
    if (j != d) throw parse_error("lattice matrix row needs " + std::to_string(d) + " entries");
    ++i;
  }
  if (i != d) throw parse_error("lattice matrix needs " + std::to_string(d) + " rows");
  return N;
}

void print_jet_table(std::ostream& os, const Jet<Rat>& jet, const std::string& prefix) {
  for (size_t i = 0; i < jet.mus.size(); ++i) {
    os << prefix << "T" << jet.mus[i] << " =";
    for (int j = 0; j < jet.cols; ++j) os << " " << rat_to_string(jet.coeff[i].at(0, j));
    os << "\n";
  }
}

void print_smoothness(std::ostream& os, const char* tag, const SmEntry& e) {
  os << tag << ".p = " << (e.p == 0 ? "inf" : std::to_string(e.p)) << "\n";
  os << tag << ".sum_rule_order_used = " << e.sum_rule_order << "\n";
  os << tag << ".rho_hat = " << e.rho.rho_hat << "\n";
  os << tag << ".sm_hat = " << e.sm_hat << "\n";
  os << tag << ".n_used = " << e.rho.n_used << "\n";
  os << tag << ".stabilized = " << (e.stabilized ? "yes" : "no") << "\n";
  os << tag << ".window_delta = " << e.rho.window_delta << "\n";
  if (e.rho.resource_capped) os << tag << ".resource_capped = yes\n";
}

struct SmoothCsvRow {
  int n;
  std::string generator;
  double s;
  double ratio;
};

void write_smooth_csv(const std::string& path, const RhoEstimate& est) {
  std::ofstream os(path);
  if (!os) throw parse_error("cannot open " + path + " for writing");
  os << "# vecsub smooth\n";
  os << "n,generator,s_n,ratio\n" << std::setprecision(17);
  for (size_t g = 0; g < est.s.size(); ++g)
    for (size_t n = 0; n < est.s[g].size(); ++n)
      os << (n + 1) << "," << '"' << est.generator_labels[g] << '"' << "," << est.s[g][n]
         << "," << (n > 0 && est.s[g][n - 1] > 0 ? est.s[g][n] / est.s[g][n - 1] : 0.0)
         << "\n";
}

int dilation_of(const CLI::App& app, int def = 2) {
  (void)app;
  return def;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vecsub: analysis and execution of multivariate vector subdivision schemes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file");
  app.allow_config_extras(true);

  std::string out_path;
  int dilation_m = 2;
  app.add_option("--dilation", dilation_m, "dilation factor m (M = m I_d)")
      ->envname("VECSUB_DILATION");

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "sum rules, spectrum, smoothness, verdicts");
  std::string an_file, an_sym_group, an_sym_centers, an_hermite, an_out, an_mixing;
  int an_target_m = -1, an_cap = 20, an_nmax = 0;
  bool an_strict = false, an_auto_mixing = false, an_no_smooth = false;
  analyze->add_option("filter", an_file, "mask file")->required();
  analyze->add_option("--target-m", an_target_m, "target C^m for the convergence verdict");
  analyze->add_option("--order-cap", an_cap, "sum-rule order cap");
  analyze->add_option("--nmax", an_nmax, "levels for smoothness estimates")
      ->envname("VECSUB_NMAX");
  analyze->add_option("--symmetry", an_sym_group, "check symmetry group (D4, D6, H)");
  analyze->add_option("--centers", an_sym_centers, "symmetry centers \"(0,0);(1/2,1/2)\"");
  analyze->add_flag("--auto-mixing", an_auto_mixing, "search signed permutation mixing");
  analyze->add_option("--hermite", an_hermite, "Lambda as \"(0,0);(1,0)\"");
  analyze->add_flag("--strict", an_strict, "exit 5 when the verdict is inconclusive");
  analyze->add_flag("--no-smooth", an_no_smooth, "skip smoothness estimates");
  analyze->add_option("--out", an_out, "also write the report to a file");

  // ---- smooth ----
  auto* smooth = app.add_subcommand("smooth", "rho/smoothness estimation");
  std::string sm_file, sm_p = "inf", sm_csv;
  int sm_nmax = 0, sm_k0 = -1;
  smooth->add_option("filter", sm_file)->required();
  smooth->add_option("--p", sm_p, "1, 2 or inf");
  smooth->add_option("--nmax", sm_nmax)->envname("VECSUB_NMAX");
  smooth->add_option("--m", sm_k0, "generator order k0 (default: full sum-rule order)");
  smooth->add_option("--csv", sm_csv, "per-level CSV output");

  // ---- run ----
  auto* run = app.add_subcommand("run", "execute the subdivision scheme");
  std::string run_file, run_data, run_u, run_mu = "", run_csv, run_bin;
  int run_n = 5, run_udelta = -1;
  run->add_option("filter", run_file)->required();
  run->add_option("--data", run_data, "initial data file (1 x r)")->required();
  run->add_option("--u", run_u, "analysis filter file (r x 1)");
  run->add_option("--u-delta", run_udelta, "use u = delta e_l (1-based l)");
  run->add_option("--mu", run_mu, "derivative multi-index, default 0");
  run->add_option("-n,--level", run_n, "levels")->required();
  run->add_option("--csv", run_csv, "grid CSV output");
  run->add_option("--binary", run_bin, "raw binary grid output");

  // ---- rate ----
  auto* rate = app.add_subcommand("rate", "measure convergence rate against an oracle");
  std::string rt_file, rt_data, rt_u, rt_mu = "", rt_oracle, rt_csv;
  int rt_n0 = 3, rt_n1 = 6, rt_udelta = -1, rt_nmax = 0;
  rate->add_option("filter", rt_file)->required();
  rate->add_option("--data", rt_data, "initial data file; default delta e1^T");
  rate->add_option("--u", rt_u, "analysis filter file");
  rate->add_option("--u-delta", rt_udelta, "use u = delta e_l (1-based)");
  rate->add_option("--mu", rt_mu, "derivative multi-index");
  rate->add_option("--oracle", rt_oracle,
                   "\"bspline:ORDER[:quincunx|sqrt3]\" closed-form target")
      ->required();
  rate->add_option("--n0", rt_n0);
  rate->add_option("--n1", rt_n1);
  rate->add_option("--nmax", rt_nmax, "levels for the sm_inf estimate");
  rate->add_option("--csv", rt_csv);

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "build masks");
  auto* c_bspline = construct->add_subcommand("bspline", "centred B-spline mask");
  int cb_order = 4;
  std::string cb_out;
  c_bspline->add_option("--order", cb_order, "even order 2m")->required();
  c_bspline->add_option("-o,--out", cb_out)->required();
  auto* c_three = construct->add_subcommand("threedir", "three-direction mask");
  int ct_m = 1;
  std::string ct_out;
  c_three->add_option("--m", ct_m)->required();
  c_three->add_option("-o,--out", ct_out)->required();
  auto* c_bal = construct->add_subcommand("balanced", "lattice-vectorized balanced mask");
  std::string cb_scalar, cb_matrix, cbal_out;
  c_bal->add_option("--scalar", cb_scalar, "scalar mask file")->required();
  c_bal->add_option("--matrix", cb_matrix, "quincunx, sqrt3 or \"a,b;c,d\"")->required();
  c_bal->add_option("-o,--out", cbal_out)->required();
  auto* c_fix = construct->add_subcommand("fixture", "write a named example mask");
  std::string cf_name, cf_out;
  c_fix->add_option("--name", cf_name, "ex1, ex2, a4, a6, au2, au3")->required();
  c_fix->add_option("-o,--out", cf_out)->required();
  auto* c_tensor = construct->add_subcommand("tensor", "tensor square of a 1-D mask");
  std::string ctn_scalar, ctn_out;
  c_tensor->add_option("--scalar", ctn_scalar)->required();
  c_tensor->add_option("-o,--out", ctn_out)->required();

  // ---- check-symmetry ----
  auto* csym = app.add_subcommand("check-symmetry", "verify G-symmetry about T");
  std::string cs_file, cs_group, cs_centers;
  bool cs_auto = false;
  csym->add_option("filter", cs_file)->required();
  csym->add_option("--group", cs_group, "D4, D6 or H")->required();
  csym->add_option("--centers", cs_centers, "\"(0,0);(1/2,1/2)\" (default: zeros)");
  csym->add_flag("--auto-mixing", cs_auto);

  // ---- transform ----
  auto* transform = app.add_subcommand("transform", "change of mask by a strong filter");
  std::string tf_file, tf_u, tf_out;
  bool tf_report = false;
  int tf_order = 3, tf_nmax = 0;
  transform->add_option("filter", tf_file)->required();
  transform->add_option("--u", tf_u, "strongly invertible filter file")->required();
  transform->add_option("-o,--out", tf_out, "write the transformed mask");
  transform->add_flag("--report", tf_report, "run the invariance suite");
  transform->add_option("--order", tf_order, "order for the invariance checks");
  transform->add_option("--nmax", tf_nmax);

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "closed-form spline evaluation");
  int or_order = 4, or_level = -1;
  std::string or_matrix, or_gamma, or_at, or_mu, or_csv;
  int or_d = 1;
  oracle->add_option("--order", or_order, "spline order 2m")->required();
  oracle->add_option("--d", or_d, "dimension");
  oracle->add_option("--matrix", or_matrix, "lattice change of variables");
  oracle->add_option("--gamma", or_gamma, "component shift (with --matrix)");
  oracle->add_option("--at", or_at, "rational point \"(1/2,0)\"");
  oracle->add_option("--mu", or_mu, "derivative multi-index");
  oracle->add_option("--grid", or_level, "emit a level-n grid CSV instead");
  oracle->add_option("--csv", or_csv, "grid CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze) {
      auto t0 = std::chrono::steady_clock::now();
      auto a = load_mask(an_file);
      DilationSpec spec(dilation_m, a.d);
      std::ostringstream rep;
      rep << "# vecsub analyze report\n";
      rep << "filter = " << an_file << "\n";
      rep << "hash = " << filter_hash(a) << "\n";
      rep << "d = " << a.d << "\nr = " << a.rows << "\nm_dilation = " << spec.m << "\n";

      auto sr = sum_rule_order(a, spec, an_cap);
      rep << "sum_rule_order = " << sr.order << "\n";
      if (sr.capped) rep << "sum_rule_order_capped = yes\n";
      if (!sr.diagnostic.empty()) rep << "sum_rule_diagnostic = " << sr.diagnostic << "\n";
      rep << "matching_jet.pinned_coordinate = " << (sr.jet.pinned + 1) << "\n";
      print_jet_table(rep, sr.jet.jet, "matching_jet.");

      auto er = check_eigen_condition(a, spec, std::max(an_target_m, 0));
      rep << "eigen.charpoly =";
      for (const auto& c : er.charpoly) rep << " " << rat_to_string(c);
      rep << "\n";
      rep << "eigen.simple_one = " << (er.simple_one ? "yes" : "no") << "\n";
      rep << "eigen.max_other_modulus = " << er.max_other_modulus << "\n";

      if (!an_sym_group.empty()) {
        SymmetrySpec sym;
        sym.group = named_group(an_sym_group);
        sym.centers = an_sym_centers.empty()
                          ? std::vector<RatVec>(size_t(a.rows), RatVec(size_t(a.d), Rat(0)))
                          : parse_centers(an_sym_centers, a.d);
        auto res = an_auto_mixing ? check_symmetry_auto_mixing(a, spec, sym)
                                  : check_symmetry(a, spec, sym);
        rep << "symmetry.group = " << an_sym_group << "\n";
        rep << "symmetry.ok = " << (res.ok ? "yes" : "no") << "\n";
        if (res.structural_incompatible) rep << "symmetry.structural_incompatible = yes\n";
        if (res.witness) {
          auto& [ei, k, blk] = *res.witness;
          rep << "symmetry.witness = element " << ei << " at " << k << " block ("
              << blk.first + 1 << "," << blk.second + 1 << ")\n";
        }
      }

      ConvergenceReport verdict;
      if (!an_no_smooth) {
        auto sm2 = sm_estimate(a, spec, 2, an_nmax);
        auto smi = sm_estimate(a, spec, 0, an_nmax);
        print_smoothness(rep, "smooth2", sm2);
        print_smoothness(rep, "smoothinf", smi);
        auto iv = sm_infty_interval(sm2.sm_hat, a.d);
        rep << "sm_inf_interval_from_2 = [" << iv.first << ", " << iv.second << "]\n";
        if (an_target_m >= 0) {
          verdict = convergence_check(a, spec, an_target_m, an_nmax);
          rep << "verdict.target_m = " << an_target_m << "\n";
          rep << "verdict.result = "
              << (verdict.verdict == Verdict::CONVERGENT        ? "CONVERGENT"
                  : verdict.verdict == Verdict::NOT_CONVERGENT ? "NOT_CONVERGENT"
                                                                : "INCONCLUSIVE")
              << "\n";
          rep << "verdict.reason = " << verdict.reason << "\n";
        }
      }

      if (!an_hermite.empty()) {
        auto lam = parse_multiindex_list(an_hermite, a.d);
        HermiteType type(lam);
        int m = std::max(an_target_m, type.mtilde);
        auto v = ghsd_convergence_check(a, type, m, an_nmax);
        rep << "hermite.mtilde = " << type.mtilde << "\n";
        rep << "hermite.verdict = "
            << (v.kind == GhsdKind::SUFFICIENT        ? "SUFFICIENT"
                : v.kind == GhsdKind::NECESSARY_FAIL ? "NECESSARY-FAIL"
                                                      : "INCONCLUSIVE")
            << "\n";
        rep << "hermite.reason = " << v.reason << "\n";
        rep << "hermite.stability_assumption = unverified\n";
      }

      auto t1 = std::chrono::steady_clock::now();
      rep << "elapsed_ms = "
          << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
      std::cout << rep.str();
      if (!an_out.empty()) {
        std::ofstream os(an_out);
        os << rep.str();
      }
      if (an_strict && an_target_m >= 0 && verdict.verdict == Verdict::INCONCLUSIVE)
        return kExitStrictInconclusive;
      return 0;
    }

    if (*smooth) {
      auto a = load_mask(sm_file);
      DilationSpec spec(dilation_m, a.d);
      int p = sm_p == "inf" ? 0 : std::stoi(sm_p);
      if (p != 0 && p != 1 && p != 2) throw parse_error("--p must be 1, 2 or inf");
      SmEntry entry;
      if (sm_k0 < 0) {
        entry = sm_estimate(a, spec, p, sm_nmax);
      } else {
        auto sr = sum_rule_order(a, spec);
        entry.p = p;
        entry.sum_rule_order = sm_k0;
        entry.rho = rho_estimate(a, spec, sr.jet, sm_k0, p,
                                 sm_nmax > 0 ? sm_nmax : default_nmax(spec.d));
        double dp = p == 0 ? 0.0 : double(spec.d) / p;
        entry.sm_hat = dp - std::log(entry.rho.rho_hat) / std::log(double(spec.m));
        entry.stabilized = entry.rho.stabilized;
      }
      std::cout << "# vecsub smooth report\n";
      print_smoothness(std::cout, "smooth", entry);
      if (p == 2) {
        auto iv = sm_infty_interval(entry.sm_hat, a.d);
        std::cout << "sm_inf_interval = [" << iv.first << ", " << iv.second << "]\n";
      }
      if (!sm_csv.empty()) write_smooth_csv(sm_csv, entry.rho);
      return 0;
    }

    if (*run) {
      auto a = load_mask(run_file);
      DilationSpec spec(dilation_m, a.d);
      auto v = read_rational_filter_file(run_data);
      MatrixFilter<Rat> u;
      if (!run_u.empty()) u = read_rational_filter_file(run_u);
      else if (run_udelta >= 1) u = MatrixFilter<Rat>::delta_col(a.d, a.rows, run_udelta - 1);
      else u = MatrixFilter<Rat>::delta_col(a.d, a.rows, 0);
      Ix mu = run_mu.empty() ? Ix(a.d) : parse_multiindex(run_mu, a.d);
      auto sr = sum_rule_order(a, spec);
      auto res = run_scheme(a, spec, v, u, mu, run_n, sr.jet);
      std::cout << "# vecsub run\nbeta = " << rat_to_string(res.beta) << "\n"
                << "interpretation = " << res.interpretation << "\n"
                << "level = " << res.level << "\n"
                << "points = " << res.grid.box.volume() << "\n";
      if (!run_csv.empty())
        write_grid_csv_file(run_csv, res.grid, rat_to_string(res.beta), res.interpretation);
      if (!run_bin.empty()) write_grid_binary_file(run_bin, res.grid);
      return 0;
    }

    if (*rate) {
      auto a = load_mask(rt_file);
      DilationSpec spec(dilation_m, a.d);
      MatrixFilter<Rat> v = rt_data.empty() ? MatrixFilter<Rat>::delta_row(a.d, a.rows, 0)
                                            : read_rational_filter_file(rt_data);
      MatrixFilter<Rat> u;
      if (!rt_u.empty()) u = read_rational_filter_file(rt_u);
      else if (rt_udelta >= 1) u = MatrixFilter<Rat>::delta_col(a.d, a.rows, rt_udelta - 1);
      else u = MatrixFilter<Rat>::delta_col(a.d, a.rows, 0);
      Ix mu = rt_mu.empty() ? Ix(a.d) : parse_multiindex(rt_mu, a.d);

      // oracle argument: bspline:ORDER[:quincunx|sqrt3]
      std::istringstream osp(rt_oracle);
      std::string kind, ordtok, mattok;
      std::getline(osp, kind, ':');
      std::getline(osp, ordtok, ':');
      std::getline(osp, mattok, ':');
      if (kind != "bspline") throw parse_error("oracle kind must be bspline");
      int order = std::stoi(ordtok);
      std::vector<SplineOracle> comps;
      if (mattok.empty()) {
        for (int l = 0; l < a.rows; ++l) comps.emplace_back(order, a.d);
        if (a.rows != 1) throw parse_error("plain bspline oracle needs a scalar mask");
      } else {
        IMat N = parse_lattice_matrix(mattok, a.d);
        auto gam = gamma_set(N);
        if (int(gam.size()) != a.rows)
          throw math_error("oracle components do not match the mask size");
        for (const Ix& g : gam) comps.emplace_back(order, a.d, N, g);
      }
      OracleGridFn fn = [&](int level) {
        // target d^mu (v * phi) = sum_z sum_l v_l(z) d^mu phi_l(. - z)
        Box box(a.d);
        for (const auto& o : comps) box = hull(box, oracle_support_box(o, level, spec.m));
        std::int64_t sc = 1;
        for (int i = 0; i < level; ++i) sc *= spec.m;
        Box full = box;
        for (std::int64_t f = 0; f < v.npoints(); ++f) {
          Ix z = v.box.unflat(f);
          full = hull(full, Box(box.lo + sc * z, box.hi + sc * z));
        }
        Grid<CD> g(level, spec.m, a.d, 1, full);
        for (std::int64_t fz = 0; fz < v.npoints(); ++fz) {
          Ix z = v.box.unflat(fz);
          for (int l = 0; l < a.rows; ++l) {
            double w = v.entry(z, 0, l).get_d();
            if (w == 0) continue;
            auto og = oracle_grid(comps[size_t(l)], level, spec.m, box, mu);
            for (std::int64_t f = 0; f < og.box.volume(); ++f) {
              Ix k = og.box.unflat(f);
              Ix kk = k + sc * z;
              g.set(kk, 0, g.value(kk, 0) + w * og.at(f)[0]);
            }
          }
        }
        return g;
      };
      auto sr = sum_rule_order(a, spec);
      auto smi = sm_estimate(a, spec, 0, rt_nmax);
      auto rep = measure_rate(a, spec, v, u, mu, fn, rt_n0, rt_n1, sr.jet, smi.sm_hat);
      std::cout << "# vecsub rate report\n";
      std::cout << "drv = " << rep.drv << (rep.drv_unbounded ? " (no deviation found)" : "")
                << "\n";
      std::cout << "sm_inf_hat = " << rep.sm_inf_hat << "\n";
      std::cout << "S = " << rep.S << "\n";
      for (size_t i = 0; i < rep.levels.size(); ++i)
        std::cout << "e[" << rep.levels[i] << "] = " << rep.errors[i] << "\n";
      std::cout << "fitted_exponent = " << rep.fitted_exponent
                << (rep.errors_at_roundoff ? " (exact: errors at roundoff)" : "") << "\n";
      std::cout << "margin = " << rep.margin << "\n";
      if (rep.outside_rate_hypothesis)
        std::cout << "note = outside the established rate regime (drv > m+1)\n";
      if (!rt_csv.empty()) {
        std::ofstream os(rt_csv);
        os << "# vecsub rate\nn,error\n" << std::setprecision(17);
        for (size_t i = 0; i < rep.levels.size(); ++i)
          os << rep.levels[i] << "," << rep.errors[i] << "\n";
      }
      return 0;
    }

    if (*construct) {
      if (*c_bspline) write_filter_file(cb_out, bspline_filter(cb_order));
      if (*c_three) write_filter_file(ct_out, three_direction_filter(ct_m));
      if (*c_bal) {
        auto A = read_rational_filter_file(cb_scalar);
        IMat N = parse_lattice_matrix(cb_matrix, A.d);
        write_filter_file(cbal_out, balanced_from_scalar(A, N));
      }
      if (*c_fix) write_filter_file(cf_out, fixture(cf_name).a);
      if (*c_tensor) {
        auto A = read_rational_filter_file(ctn_scalar);
        write_filter_file(ctn_out, tensor_filter(A, A));
      }
      return 0;
    }

    if (*csym) {
      auto a = load_mask(cs_file);
      DilationSpec spec(dilation_m, a.d);
      SymmetrySpec sym;
      sym.group = named_group(cs_group);
      sym.centers = cs_centers.empty()
                        ? std::vector<RatVec>(size_t(a.rows), RatVec(size_t(a.d), Rat(0)))
                        : parse_centers(cs_centers, a.d);
      auto res = cs_auto ? check_symmetry_auto_mixing(a, spec, sym)
                         : check_symmetry(a, spec, sym);
      std::cout << "symmetric = " << (res.ok ? "yes" : "no") << "\n";
      if (res.structural_incompatible) std::cout << "structural_incompatible = yes\n";
      if (res.witness) {
        auto& [ei, k, blk] = *res.witness;
        std::cout << "witness = element " << ei << " at " << k << " block (" << blk.first + 1
                  << "," << blk.second + 1 << ")\n";
      }
      return 0;
    }

    if (*transform) {
      auto a = load_mask(tf_file);
      DilationSpec spec(dilation_m, a.d);
      auto U = read_rational_filter_file(tf_u);
      auto sf = verify_strong(U);
      if (!sf) throw math_error(tf_u + ": filter is not strongly invertible");
      std::cout << "det = " << rat_to_string(sf->det_c0) << " * z^" << sf->det_k << "\n";
      auto at = transform_filter(a, spec, *sf);
      if (!tf_out.empty()) write_filter_file(tf_out, at);
      if (tf_report) {
        auto rep = invariance_suite(a, spec, *sf, tf_order, 3,
                                    tf_nmax > 0 ? tf_nmax : 6);
        std::cout << "invariance.sum_rule_order = " << rep.order_a << " vs "
                  << rep.order_transformed
                  << (rep.sum_rule_order_equal ? " (equal)" : " (DIFFER)") << "\n";
        std::cout << "invariance.finite_n_identity = "
                  << (rep.finite_n_identity ? "exact" : "FAILED") << "\n";
        std::cout << "invariance.sm_delta = " << rep.sm_delta << "\n";
        std::cout << "invariance.pass = " << (rep.pass() ? "yes" : "no") << "\n";
      }
      return 0;
    }

    if (*oracle) {
      SplineOracle o = or_matrix.empty()
                           ? SplineOracle(or_order, or_d)
                           : SplineOracle(or_order, or_d,
                                          parse_lattice_matrix(or_matrix, or_d),
                                          or_gamma.empty() ? Ix(or_d)
                                                           : parse_multiindex(or_gamma, or_d));
      Ix mu = or_mu.empty() ? Ix(or_d) : parse_multiindex(or_mu, or_d);
      if (or_level >= 0) {
        Box b = oracle_support_box(o, or_level, dilation_m);
        auto g = oracle_grid(o, or_level, dilation_m, b, mu);
        if (or_csv.empty()) throw parse_error("--grid needs --csv");
        write_grid_csv_file(or_csv, g);
        std::cout << "points = " << g.box.volume() << "\n";
        return 0;
      }
      if (or_at.empty()) throw parse_error("need --at or --grid");
      // parse rational point
      std::string s;
      for (char c : or_at)
        if (c != '(' && c != ')' && !isspace(static_cast<unsigned char>(c))) s += c;
      RatVec x;
      std::istringstream cs(s);
      std::string tok;
      while (std::getline(cs, tok, ',')) x.push_back(parse_rational(tok));
      if (int(x.size()) != or_d) throw parse_error("--at needs " + std::to_string(or_d) +
                                                   " coordinates");
      Rat val = eval_spline(o, x, mu);
      std::cout << "value = " << rat_to_string(val) << " (" << val.get_d() << ")\n";
      return 0;
    }
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const math_error& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return kExitMath;
  }
  (void)dilation_of(app);
  return 0;
}
