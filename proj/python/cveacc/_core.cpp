#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cveacc/experiment.hpp"
#include "cveacc/io.hpp"
#include "cveacc/selftest.hpp"

namespace py = pybind11;
using namespace cveacc;

namespace {

std::vector<PhaseVector> rows_of(const Matrix& m) {
  std::vector<PhaseVector> rows;
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.emplace_back(Vector(m.row(r).transpose()));
  return rows;
}

// JSON values cross the boundary as Python objects via the json module.
py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json from_python(const py::handle& obj) {
  return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Circuit circuit_of(const py::handle& gates, int n) {
  Circuit c = circuit_from_json(from_python(gates));
  if (c.n > n) throw DimensionError("circuit touches modes beyond n");
  return widen(c, n);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Continuous-variable entanglement-assisted codes";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NotSymplecticError>(m, "NotSymplecticError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_RuntimeError);

  m.def("symplectic_product",
        [](const Vector& u, const Vector& v) {
          return symplectic_product(PhaseVector(u), PhaseVector(v));
        },
        "u . v = p.x' - x.p' for (p|x) vectors");

  m.def("symplectic_gram_schmidt",
        [](const Matrix& rows, double tol) {
          const auto dec = symplectic_gram_schmidt(rows_of(rows), tol);
          py::dict out = to_python(to_json(dec));
          out["params"] = to_python(to_json(code_parameters(dec)));
          return out;
        },
        py::arg("rows"), py::arg("tol") = kDefaultTolerance);

  py::class_<CodeSpec>(m, "Code")
      .def_property_readonly("params",
                             [](const CodeSpec& c) { return to_python(to_json(c.params)); })
      .def_property_readonly("H", [](const CodeSpec& c) { return c.H.matrix(); })
      .def_property_readonly("F", [](const CodeSpec& c) { return c.F.matrix(); })
      .def_property_readonly("H_aug", [](const CodeSpec& c) { return c.H_aug.matrix(); })
      .def_property_readonly("F_aug", [](const CodeSpec& c) { return c.F_aug.matrix(); })
      .def_property_readonly("upsilon", [](const CodeSpec& c) { return c.upsilon.matrix(); })
      .def("syndrome",
           [](const CodeSpec& c, const Vector& u) { return syndrome(c, PhaseVector(u)).values; })
      .def("decode",
           [](const CodeSpec& c, const Vector& s, double tol) {
             return to_python(to_json(decode_single_mode(c, Syndrome{s}, tol)));
           },
           py::arg("syndrome"), py::arg("tol") = kDefaultTolerance)
      .def("to_json", [](const CodeSpec& c) { return to_python(to_json(c)); });

  m.def("build_code",
        [](const Matrix& rows, double tol) { return build_code(rows_of(rows), tol); },
        py::arg("rows"), py::arg("tol") = kDefaultTolerance);
  m.def("code_from_json", [](const py::object& j) { return code_from_json(from_python(j)); });

  m.def("decompose",
        [](const Matrix& a) {
          const Decomposition d = decompose(QuadAction(a));
          return py::make_tuple(to_python(to_json(d.circuit)), to_python(to_json(d.report)));
        },
        py::arg("action"), "Gate list whose quadrature action equals the (x|p) matrix");
  m.def("circuit_action",
        [](const py::object& gates, int n) { return circuit_action(circuit_of(gates, n)).matrix(); },
        py::arg("gates"), py::arg("n"));
  m.def("compile_encoder",
        [](const CodeSpec& c) { return to_python(to_json(compile_encoder(c))); });
  m.def("encoder_action", [](const CodeSpec& c) { return encoder_action(c).matrix(); });

  py::class_<GaussianState>(m, "GaussianState")
      .def_static("vacuum", &GaussianState::vacuum, py::arg("n") = 1)
      .def_static("coherent", &GaussianState::coherent, py::arg("x"), py::arg("p"))
      .def_static("position_squeezed", &GaussianState::position_squeezed, py::arg("r"))
      .def_static("epr", &GaussianState::epr, py::arg("r"))
      .def_property_readonly("modes", &GaussianState::modes)
      .def_property_readonly("mean", &GaussianState::mean)
      .def_property_readonly("cov", &GaussianState::cov);

  m.def("tensor", &tensor);
  m.def("apply_circuit",
        [](const GaussianState& s, const py::object& gates) {
          return apply_circuit(s, circuit_of(gates, s.modes()));
        });
  m.def("displace", &displace);
  m.def("condition_on",
        [](const GaussianState& s, int mode, const std::string& q, double value) {
          if (q != "x" && q != "p") throw ParseError("quadrature must be \"x\" or \"p\"");
          return condition_on(s, mode, q == "x" ? Quadrature::X : Quadrature::P, value);
        },
        py::arg("state"), py::arg("mode"), py::arg("quadrature"), py::arg("value"));
  m.def("phase_gate_protocol",
        [](const GaussianState& s, int mode, double g1, double g2, double r,
           std::uint64_t seed) {
          Rng rng = trial_rng(seed, 0);
          return phase_gate_protocol(s, mode, g1, g2, r, rng);
        },
        py::arg("state"), py::arg("mode"), py::arg("g1"), py::arg("g2"), py::arg("r"),
        py::arg("seed") = 0);

  m.def("run_ec_experiment",
        [](const CodeSpec& c, const Vector& error, double r, int trials, std::uint64_t seed,
           int threads) {
          ExperimentConfig config;
          config.squeezing_r = r;
          config.trials = trials;
          config.seed = seed;
          config.threads = threads;
          const PhaseVector u(error);
          ExperimentStats stats;
          {
            py::gil_scoped_release release;
            stats = run_ec_experiment(c, u, config);
          }
          return to_python(to_json(stats));
        },
        py::arg("code"), py::arg("error"), py::arg("r"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("threads") = 1);

  m.def("selftest", [] { return to_python(to_json(run_selftest(worked_example_fixtures()))); });
}
