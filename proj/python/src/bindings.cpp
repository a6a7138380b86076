#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vecsub/constructions.hpp"
#include "vecsub/hermite.hpp"
#include "vecsub/io.hpp"
#include "vecsub/oracle.hpp"
#include "vecsub/scheme.hpp"
#include "vecsub/smoothness.hpp"
#include "vecsub/transform.hpp"

namespace py = pybind11;
using namespace vecsub;

namespace {

Ix to_ix(const std::vector<std::int64_t>& v) {
  if (v.size() > kMaxDim) throw math_error("dimension out of range");
  Ix k(int(v.size()));
  for (size_t i = 0; i < v.size(); ++i) k[int(i)] = v[i];
  return k;
}

std::vector<std::int64_t> from_ix(const Ix& k) {
  std::vector<std::int64_t> v(size_t(k.dim));
  for (int i = 0; i < k.dim; ++i) v[size_t(i)] = k[i];
  return v;
}

// entries come in as (point, row-major rational strings); exact arithmetic
// stays on the C++ side
MatrixFilter<Rat> filter_from_entries(
    int d, int rows, int cols,
    const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::string>>>& entries) {
  MatrixFilter<Rat> f(d, rows, cols);
  for (const auto& [pt, vals] : entries) {
    if (int(vals.size()) != rows * cols) throw math_error("entry value count mismatch");
    Mat<Rat> m(rows, cols);
    for (int i = 0; i < rows * cols; ++i) m.a[size_t(i)] = parse_rational(vals[size_t(i)]);
    f.set(to_ix(pt), m);
  }
  f.trim();
  return f;
}

py::array_t<double> grid_to_numpy(const Grid<CD>& g) {
  std::vector<py::ssize_t> shape;
  for (int i = 0; i < g.d; ++i) shape.push_back(py::ssize_t(g.box.hi[i] - g.box.lo[i] + 1));
  shape.push_back(g.r);
  py::array_t<double> arr(shape);
  double* data = static_cast<double*>(arr.request().ptr);
  for (std::int64_t f = 0; f < g.box.volume(); ++f)
    for (int c = 0; c < g.r; ++c) data[size_t(f) * size_t(g.r) + size_t(c)] = g.at(f)[c].real();
  return arr;
}

}  // namespace

PYBIND11_MODULE(_vecsub, m) {
  m.doc() = "vector subdivision scheme analysis (C++ core)";

  py::register_exception<parse_error>(m, "ParseError");
  py::register_exception<math_error>(m, "MathError");
  py::register_exception<resource_error>(m, "ResourceError");

  py::class_<MatrixFilter<Rat>>(m, "Filter")
      .def(py::init(&filter_from_entries), py::arg("d"), py::arg("rows"), py::arg("cols"),
           py::arg("entries"))
      .def_property_readonly("d", [](const MatrixFilter<Rat>& f) { return f.d; })
      .def_property_readonly("rows", [](const MatrixFilter<Rat>& f) { return f.rows; })
      .def_property_readonly("cols", [](const MatrixFilter<Rat>& f) { return f.cols; })
      .def("support",
           [](const MatrixFilter<Rat>& f) {
             return std::make_pair(from_ix(f.box.lo), from_ix(f.box.hi));
           })
      .def("entry",
           [](const MatrixFilter<Rat>& f, const std::vector<std::int64_t>& k, int i, int j) {
             return rat_to_string(f.entry(to_ix(k), i, j));
           })
      .def("entry_float",
           [](const MatrixFilter<Rat>& f, const std::vector<std::int64_t>& k, int i, int j) {
             return f.entry(to_ix(k), i, j).get_d();
           })
      .def("__eq__",
           [](const MatrixFilter<Rat>& a, const MatrixFilter<Rat>& b) { return a == b; })
      .def("save",
           [](const MatrixFilter<Rat>& f, const std::string& path) { write_filter_file(path, f); })
      .def("__repr__", [](const MatrixFilter<Rat>& f) {
        std::ostringstream os;
        os << "<vecsub.Filter d=" << f.d << " " << f.rows << "x" << f.cols << ">";
        return os.str();
      });

  m.def("load_filter", [](const std::string& path) { return read_rational_filter_file(path); });
  m.def("delta", [](int d, int n) { return MatrixFilter<Rat>::delta(d, n); });
  m.def("delta_row", [](int d, int r, int l) { return MatrixFilter<Rat>::delta_row(d, r, l); });
  m.def("delta_col", [](int d, int r, int l) { return MatrixFilter<Rat>::delta_col(d, r, l); });
  m.def("convolve",
        [](const MatrixFilter<Rat>& a, const MatrixFilter<Rat>& b) { return convolve(a, b); });
  m.def("difference", [](const std::vector<std::int64_t>& mu, const MatrixFilter<Rat>& v) {
    return difference(to_ix(mu), v);
  });
  m.def("subdivision_apply",
        [](const MatrixFilter<Rat>& a, int dil, const MatrixFilter<Rat>& v) {
          return subdivision_apply(a, DilationSpec(dil, a.d), v);
        });

  m.def("bspline_filter", &bspline_filter);
  m.def("tensor_filter", &tensor_filter);
  m.def("three_direction_filter", &three_direction_filter);
  m.def("balanced_from_scalar", [](const MatrixFilter<Rat>& A, const std::string& which) {
    IMat N = which == "quincunx" ? quincunx_matrix() : sqrt3_matrix();
    return balanced_from_scalar(A, N);
  });
  m.def("fixture", [](const std::string& name) { return fixture(name).a; });
  m.def("fixture_names", [] {
    std::vector<std::string> names;
    for (const auto& f : fixtures()) names.push_back(f.name);
    return names;
  });

  m.def(
      "sum_rule_order",
      [](const MatrixFilter<Rat>& a, int dil, int cap) {
        auto res = sum_rule_order(a, DilationSpec(dil, a.d), cap);
        py::dict out;
        out["order"] = res.order;
        out["capped"] = res.capped;
        py::list jet;
        for (size_t i = 0; i < res.jet.jet.mus.size(); ++i) {
          py::list row;
          for (int j = 0; j < res.jet.jet.cols; ++j)
            row.append(rat_to_string(res.jet.jet.coeff[i].at(0, j)));
          jet.append(py::make_tuple(from_ix(res.jet.jet.mus[i]), row));
        }
        out["matching_jet"] = jet;
        return out;
      },
      py::arg("a"), py::arg("dilation") = 2, py::arg("cap") = 20);

  m.def(
      "check_symmetry",
      [](const MatrixFilter<Rat>& a, int dil, const std::string& group,
         const std::vector<std::vector<std::string>>& centers) {
        SymmetrySpec sym;
        const auto& g = builtin_groups();
        sym.group = group == "D4" ? g.D4 : group == "D6" ? g.D6 : g.H;
        if (centers.empty())
          sym.centers.assign(size_t(a.rows), RatVec(size_t(a.d), Rat(0)));
        else
          for (const auto& c : centers) {
            RatVec v;
            for (const auto& s : c) v.push_back(parse_rational(s));
            sym.centers.push_back(v);
          }
        return bool(check_symmetry(a, DilationSpec(dil, a.d), sym));
      },
      py::arg("a"), py::arg("dilation") = 2, py::arg("group") = "D4",
      py::arg("centers") = std::vector<std::vector<std::string>>{});

  m.def(
      "sm_estimate",
      [](const MatrixFilter<Rat>& a, int dil, const std::string& p, int nmax) {
        int pv = p == "inf" ? 0 : std::stoi(p);
        auto e = sm_estimate(a, DilationSpec(dil, a.d), pv, nmax);
        py::dict out;
        out["sm_hat"] = e.sm_hat;
        out["rho_hat"] = e.rho.rho_hat;
        out["stabilized"] = e.stabilized;
        out["sum_rule_order"] = e.sum_rule_order;
        out["n_used"] = e.rho.n_used;
        return out;
      },
      py::arg("a"), py::arg("dilation") = 2, py::arg("p") = "inf", py::arg("nmax") = 0);

  m.def(
      "convergence_check",
      [](const MatrixFilter<Rat>& a, int dil, int target_m, int nmax) {
        auto rep = convergence_check(a, DilationSpec(dil, a.d), target_m, nmax);
        py::dict out;
        out["verdict"] = rep.verdict == Verdict::CONVERGENT        ? "CONVERGENT"
                         : rep.verdict == Verdict::NOT_CONVERGENT ? "NOT_CONVERGENT"
                                                                   : "INCONCLUSIVE";
        out["reason"] = rep.reason;
        out["sum_rule_order"] = rep.sum_rule_order;
        out["sm_inf_hat"] = rep.sm_inf_hat;
        out["sm2_hat"] = rep.sm2_hat;
        return out;
      },
      py::arg("a"), py::arg("dilation") = 2, py::arg("target_m") = 0, py::arg("nmax") = 0);

  m.def(
      "run_scheme",
      [](const MatrixFilter<Rat>& a, int dil, const MatrixFilter<Rat>& v,
         const MatrixFilter<Rat>& u, const std::vector<std::int64_t>& mu, int n) {
        DilationSpec spec(dil, a.d);
        auto sr = sum_rule_order(a, spec);
        auto res = run_scheme(a, spec, v, u, to_ix(mu), n, sr.jet);
        py::dict out;
        out["beta"] = rat_to_string(res.beta);
        out["level"] = res.level;
        out["box_lo"] = from_ix(res.grid.box.lo);
        out["box_hi"] = from_ix(res.grid.box.hi);
        out["values"] = grid_to_numpy(res.grid);
        return out;
      },
      py::arg("a"), py::arg("dilation"), py::arg("v"), py::arg("u"), py::arg("mu"),
      py::arg("n"));

  m.def(
      "phi_grid",
      [](const MatrixFilter<Rat>& a, int dil, int level) {
        DilationSpec spec(dil, a.d);
        auto sr = sum_rule_order(a, spec);
        Grid<Rat> g = phi_integer_values(a, spec, sr.jet);
        for (int i = 0; i < level; ++i) g = refine(a, spec, g);
        auto gc = g.to_cd();
        py::dict out;
        out["level"] = level;
        out["box_lo"] = from_ix(gc.box.lo);
        out["box_hi"] = from_ix(gc.box.hi);
        out["values"] = grid_to_numpy(gc);
        return out;
      },
      py::arg("a"), py::arg("dilation") = 2, py::arg("level") = 4);

  m.def(
      "bspline",
      [](int order, const std::string& x) {
        return bspline_value(order, parse_rational(x)).get_d();
      },
      py::arg("order"), py::arg("x"));
}
