#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pok/differences.hpp"
#include "pok/errors.hpp"
#include "pok/pmf.hpp"
#include "pok/roots.hpp"
#include "pok/structure.hpp"
#include "pok/sweep_fit.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  using namespace pok;
  m.doc() = "Scaled pmf, finite differences and lambda thresholds of the Poisson "
            "distribution of order k";

  static py::exception<Error> error(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<OracleTooLarge>(m, "OracleTooLarge", error.ptr());
  py::register_exception<NoSignChange>(m, "NoSignChange", error.ptr());
  py::register_exception<BracketFailure>(m, "BracketFailure", error.ptr());
  py::register_exception<DegenerateFit>(m, "DegenerateFit", error.ptr());

  py::class_<Params>(m, "Params")
      .def(py::init<int, double>(), py::arg("k"), py::arg("lambda_"))
      .def_property_readonly("k", &Params::k)
      .def_property_readonly("lambda_", &Params::lambda)
      .def("kappa", &Params::kappa)
      .def("__repr__", [](const Params& p) {
        return "Params(k=" + std::to_string(p.k()) + ", lambda_=" + std::to_string(p.lambda()) + ")";
      });

  m.def("pmf_bruteforce", &pmf_bruteforce, py::arg("params"), py::arg("n"),
        py::arg("budget") = kDefaultEnumerationBudget);
  m.def(
      "pmf_recurrence_table",
      [](const Params& params, int n_max) { return pmf_recurrence_table(params, n_max).values; },
      py::arg("params"), py::arg("n_max"));
  m.def("pmf_km_sum", &pmf_km_sum, py::arg("params"), py::arg("n"));
  m.def("pmf_k2_closed", &pmf_k2_closed, py::arg("lambda_"), py::arg("n"));
  m.def(
      "normalization_check",
      [](const Params& params, double tol, int cap) {
        const auto r = normalization_check(params, tol, cap);
        return py::make_tuple(r.n, r.defect, r.mean);
      },
      py::arg("params"), py::arg("tol"), py::arg("cap") = kDefaultNormalizationCap);

  m.def("difference_exact", &difference_exact, py::arg("params"), py::arg("m"), py::arg("n"));
  m.def("difference_closed_form", &difference_closed_form, py::arg("params"), py::arg("m"),
        py::arg("n"));
  m.def(
      "absolute_monotonicity_report",
      [](const Params& params) {
        const auto r = absolute_monotonicity_report(params);
        return py::make_tuple(r.max_rel_discrepancy, r.all_positive, r.cells.size());
      },
      py::arg("params"));

  py::class_<StructureReport>(m, "StructureReport")
      .def_readonly("cap", &StructureReport::cap)
      .def_readonly("decreasing_on_block", &StructureReport::decreasing_on_block)
      .def_readonly("concave_on_block", &StructureReport::concave_on_block)
      .def_readonly("decreasing_tail_to", &StructureReport::decreasing_tail_to)
      .def_readonly("first_violation", &StructureReport::first_violation)
      .def_readonly("marginal", &StructureReport::marginal);
  m.def("block_difference_kp1_2k", &block_difference_kp1_2k, py::arg("params"), py::arg("n"));
  m.def("structure_report", &structure_report, py::arg("params"), py::arg("cap"),
        py::arg("tie_rel_tol") = kDefaultTieRelTol);

  py::class_<ThresholdSet>(m, "ThresholdSet")
      .def_readonly("k", &ThresholdSet::k)
      .def_readonly("r_k", &ThresholdSet::r_k)
      .def_readonly("t_k", &ThresholdSet::t_k)
      .def_readonly("lambda_k1k2", &ThresholdSet::lambda_k1k2)
      .def_readonly("bound_necessary", &ThresholdSet::bound_necessary)
      .def_readonly("bound_sufficient", &ThresholdSet::bound_sufficient)
      .def("difference", &ThresholdSet::difference);
  m.def("threshold_set", &threshold_set, py::arg("k"), py::arg("rel_tol") = 1e-12);
  m.def("verify_uniqueness", &verify_uniqueness, py::arg("k"), py::arg("grid"));
  m.def(
      "sweep",
      [](int k_min, int k_max, double rel_tol, unsigned jobs) {
        py::gil_scoped_release release;
        return sweep(k_min, k_max, rel_tol, jobs);
      },
      py::arg("k_min"), py::arg("k_max"), py::arg("rel_tol") = 1e-12, py::arg("jobs") = 0);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("alpha", &FitResult::alpha)
      .def_readonly("beta", &FitResult::beta)
      .def_readonly("max_residual", &FitResult::max_residual)
      .def_readonly("min_residual", &FitResult::min_residual)
      .def_readonly("k_range", &FitResult::k_range)
      .def_readonly("residuals", &FitResult::residuals);
  m.def(
      "fit_inverse_root",
      [](const std::vector<std::pair<int, double>>& data) {
        std::vector<FitPoint> points;
        points.reserve(data.size());
        for (const auto& [k, lambda] : data) points.push_back({k, lambda});
        return fit_inverse_root(points);
      },
      py::arg("data"));
}
