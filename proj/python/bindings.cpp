#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/model.hpp"
#include "qcorr/sweep.hpp"

namespace py = pybind11;

namespace {

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

py::array_t<std::complex<double>> to_numpy(const qcorr::ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  py::array_t<std::complex<double>> out({n, n});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) view(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

py::array_t<double> to_numpy(const qcorr::RealSymmetric3& m) {
  py::array_t<double> out({3, 3});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < 3; ++i)
    for (py::ssize_t j = 0; j < 3; ++j) view(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

qcorr::HermitianMatrix hermitian_from(const ComplexArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw qcorr::InvalidArgument("expected a square matrix");
  const auto n = static_cast<std::size_t>(a.shape(0));
  qcorr::ComplexMatrix m(n);
  auto view = a.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
  return qcorr::HermitianMatrix(m);
}

qcorr::DensityMatrix density_from(const ComplexArray& a) {
  return qcorr::DensityMatrix::from_matrix(hermitian_from(a));
}

py::dict to_dict(const qcorr::MeasureResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["direction"] = r.direction.components();
  d["matrix"] = r.matrix ? py::object(to_numpy(*r.matrix)) : py::object(py::none());
  return d;
}

py::dict to_dict(const qcorr::SweepRow& r) {
  py::dict d;
  d["jx"] = r.params.jx;
  d["jy"] = r.params.jy;
  d["jz"] = r.params.jz;
  d["dz"] = r.params.dz;
  d["temp"] = r.params.temp;
  d["lqfi"] = r.lqfi;
  d["lqu"] = r.lqu;
  d["w11"] = r.w11;
  d["w22"] = r.w22;
  d["w33"] = r.w33;
  d["m11"] = r.m11;
  d["m22"] = r.m22;
  d["m33"] = r.m33;
  return d;
}

qcorr::SweepSpec make_spec(const std::string& swept, double start, double stop, int points,
                           const qcorr::ModelParams& fixed, const std::optional<std::string>& curve_field,
                           const std::vector<double>& curve_values) {
  qcorr::SweepSpec spec;
  spec.fixed = fixed;
  spec.swept = qcorr::parse_field(swept);
  spec.start = start;
  spec.stop = stop;
  spec.points = points;
  if (curve_field) spec.curves = qcorr::CurveFamily{qcorr::parse_field(*curve_field), curve_values};
  return spec;
}

std::string csv_of(const std::vector<qcorr::SweepRow>& rows) {
  std::ostringstream out;
  qcorr::emit_csv(rows, out);
  return out.str();
}

qcorr::Measure parse_measure(const std::string& name) {
  if (name == "fisher") return qcorr::Measure::fisher;
  if (name == "skew") return qcorr::Measure::skew;
  throw qcorr::InvalidArgument("measure must be 'fisher' or 'skew'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "LQFI / LQU of the two-qubit Heisenberg XYZ chain with z-axis DM interaction";

  static py::exception<qcorr::NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const qcorr::InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const qcorr::IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const qcorr::NumericalError& e) {
      py::set_error(numerical_error, e.what());
    }
  });

  py::class_<qcorr::ModelParams>(m, "ModelParams")
      .def(py::init([](double jx, double jy, double jz, double dz, double temp) {
             return qcorr::ModelParams{jx, jy, jz, dz, temp};
           }),
           py::arg("jx") = 0.0, py::arg("jy") = 0.0, py::arg("jz") = 0.0, py::arg("dz") = 0.0,
           py::arg("temp") = 1.0)
      .def_readwrite("jx", &qcorr::ModelParams::jx)
      .def_readwrite("jy", &qcorr::ModelParams::jy)
      .def_readwrite("jz", &qcorr::ModelParams::jz)
      .def_readwrite("dz", &qcorr::ModelParams::dz)
      .def_readwrite("temp", &qcorr::ModelParams::temp)
      .def("validate", &qcorr::ModelParams::validate)
      .def("__repr__", [](const qcorr::ModelParams& p) {
        std::ostringstream s;
        s << "ModelParams(jx=" << p.jx << ", jy=" << p.jy << ", jz=" << p.jz << ", dz=" << p.dz
          << ", temp=" << p.temp << ")";
        return s.str();
      });

  m.attr("CSV_HEADER") = std::string(qcorr::kCsvHeader);

  m.def("hamiltonian", [](const qcorr::ModelParams& p) { return to_numpy(qcorr::hamiltonian(p).matrix()); },
        py::arg("params"), "4x4 Hamiltonian in the |00>,|01>,|10>,|11> basis.");

  m.def("thermal_state", [](const qcorr::ModelParams& p) { return to_numpy(qcorr::thermal_state(p).matrix().matrix()); },
        py::arg("params"), "Gibbs state from exact diagonalization.");

  m.def(
      "spectrum",
      [](const qcorr::ModelParams& p) {
        const auto s = qcorr::spectrum(p);
        py::dict d;
        d["energies"] = s.energies;
        d["kappa"] = s.kappa;
        d["theta"] = s.theta;
        d["phase"] = s.phase;
        d["eigenstates"] = s.eigenstates;
        d["degenerate"] = s.degenerate;
        return d;
      },
      py::arg("params"));

  m.def(
      "closed_form_elements",
      [](const qcorr::ModelParams& p) {
        const auto e = qcorr::closed_form_elements(p);
        py::dict d;
        d["r"] = e.r;
        d["u"] = e.u;
        d["s"] = e.s;
        d["v"] = e.v;
        d["z_partition"] = e.z_partition;
        return d;
      },
      py::arg("params"));

  m.def("closed_form_w_diag", [](const qcorr::ModelParams& p) { return qcorr::closed_form_w_diag(qcorr::closed_form_elements(p)); },
        py::arg("params"));
  m.def("closed_form_m_diag", [](const qcorr::ModelParams& p) { return qcorr::closed_form_m_diag(qcorr::closed_form_elements(p)); },
        py::arg("params"));

  m.def("qfi", [](const ComplexArray& rho, const ComplexArray& h) { return qcorr::qfi(density_from(rho), hermitian_from(h)); },
        py::arg("rho"), py::arg("h"));
  m.def("variance", [](const ComplexArray& rho, const ComplexArray& k) { return qcorr::variance(density_from(rho), hermitian_from(k)); },
        py::arg("rho"), py::arg("k"));
  m.def("skew_information",
        [](const ComplexArray& rho, const ComplexArray& k) {
          return qcorr::skew_information(density_from(rho), hermitian_from(k));
        },
        py::arg("rho"), py::arg("k"));

  m.def("lqfi_matrix", [](const ComplexArray& rho) { return to_numpy(qcorr::lqfi_matrix(density_from(rho))); }, py::arg("rho"));
  m.def("lqu_matrix", [](const ComplexArray& rho) { return to_numpy(qcorr::lqu_matrix(density_from(rho))); }, py::arg("rho"));
  m.def("lqfi", [](const ComplexArray& rho) { return to_dict(qcorr::lqfi(density_from(rho))); }, py::arg("rho"));
  m.def("lqu", [](const ComplexArray& rho) { return to_dict(qcorr::lqu(density_from(rho))); }, py::arg("rho"));

  m.def(
      "brute_force_min",
      [](const ComplexArray& rho, const std::string& measure, int resolution) {
        return to_dict(qcorr::brute_force_min(density_from(rho), parse_measure(measure), resolution));
      },
      py::arg("rho"), py::arg("measure"), py::arg("resolution") = qcorr::kOracleResolution);

  m.def("eval_point", [](const qcorr::ModelParams& p) { return to_dict(qcorr::eval_point(p)); }, py::arg("params"));

  m.def(
      "run_sweep",
      [](const std::string& swept, double start, double stop, int points, const qcorr::ModelParams& fixed,
         const std::optional<std::string>& curve_field, const std::vector<double>& curve_values, bool serial) {
        const auto spec = make_spec(swept, start, stop, points, fixed, curve_field, curve_values);
        std::vector<qcorr::SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = qcorr::run_sweep(spec, serial ? qcorr::Execution::serial : qcorr::Execution::parallel);
        }
        py::list out;
        for (const auto& r : rows) out.append(to_dict(r));
        return out;
      },
      py::arg("swept"), py::arg("start"), py::arg("stop"), py::arg("points"), py::arg("fixed") = qcorr::ModelParams{},
      py::arg("curve_field") = py::none(), py::arg("curve_values") = std::vector<double>{}, py::arg("serial") = false);

  m.def(
      "sweep_csv",
      [](const std::string& swept, double start, double stop, int points, const qcorr::ModelParams& fixed,
         const std::optional<std::string>& curve_field, const std::vector<double>& curve_values, bool serial) {
        const auto spec = make_spec(swept, start, stop, points, fixed, curve_field, curve_values);
        py::gil_scoped_release release;
        return csv_of(qcorr::run_sweep(spec, serial ? qcorr::Execution::serial : qcorr::Execution::parallel));
      },
      py::arg("swept"), py::arg("start"), py::arg("stop"), py::arg("points"), py::arg("fixed") = qcorr::ModelParams{},
      py::arg("curve_field") = py::none(), py::arg("curve_values") = std::vector<double>{}, py::arg("serial") = false);

  m.def("figure_ids", &qcorr::figure_ids);

  m.def(
      "figure_preset",
      [](const std::string& id) {
        const auto preset = qcorr::figure_preset(id);
        py::dict d;
        d["id"] = preset.id;
        d["headline"] = preset.headline;
        d["note"] = preset.note;
        d["fixed"] = preset.spec.fixed;
        d["swept"] = std::string(qcorr::to_string(preset.spec.swept));
        d["start"] = preset.spec.start;
        d["stop"] = preset.spec.stop;
        d["points"] = preset.spec.points;
        if (preset.spec.curves) {
          d["curve_field"] = std::string(qcorr::to_string(preset.spec.curves->field));
          d["curve_values"] = preset.spec.curves->values;
        }
        return d;
      },
      py::arg("id"));

  m.def(
      "figure_csv",
      [](const std::string& id, bool serial) {
        const auto preset = qcorr::figure_preset(id);
        py::gil_scoped_release release;
        return csv_of(qcorr::run_sweep(preset.spec, serial ? qcorr::Execution::serial : qcorr::Execution::parallel));
      },
      py::arg("id"), py::arg("serial") = false);

  m.def(
      "self_test",
      [](int draws, std::uint64_t seed) {
        qcorr::SelfTestReport report;
        {
          py::gil_scoped_release release;
          report = qcorr::self_test(draws, seed);
        }
        py::dict d;
        d["passed"] = report.passed();
        py::list checks;
        for (const auto& c : report.checks) {
          py::dict entry;
          entry["name"] = c.name;
          entry["passed"] = c.passed;
          entry["worst"] = c.worst;
          entry["tolerance"] = c.tolerance;
          checks.append(entry);
        }
        d["checks"] = checks;
        return d;
      },
      py::arg("draws"), py::arg("seed") = 42);
}
