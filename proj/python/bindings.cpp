// Python bindings for the symbolic core and the run drivers.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geoquant/config.hpp"
#include "geoquant/parser.hpp"
#include "geoquant/quantize.hpp"
#include "geoquant/runs.hpp"

namespace py = pybind11;
using namespace geoquant;

namespace {

Variable variable_named(const std::string& name, int dim) {
  for (std::size_t i = 0; i < num_vars(dim); ++i) {
    const Variable v = var_at(i, dim);
    if (var_name(v) == name) return v;
  }
  throw py::value_error("no variable '" + name + "' in dimension " + std::to_string(dim));
}

Space space_named(const std::string& s) {
  if (s == "V") return Space::OnVQ;
  if (s == "T") return Space::OnTQ;
  throw py::value_error("space must be 'V' or 'T'");
}

QuantizationMap map_named(const std::string& s) {
  if (s == "prequant_t") return QuantizationMap::PrequantT;
  if (s == "prequant_v") return QuantizationMap::PrequantV;
  if (s == "schrodinger") return QuantizationMap::Schrodinger;
  throw py::value_error("map must be 'prequant_t', 'prequant_v' or 'schrodinger'");
}

PhaseFunction phase(const Polynomial& p, const std::string& space) { return {p, space_named(space)}; }

template <typename T>
py::array_t<T> array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict evolve_dict(const EvolveSeries& s) {
  const auto rows = static_cast<py::ssize_t>(s.quantum_t.size());
  const auto cols = static_cast<py::ssize_t>(s.expectations.empty() ? 0 : s.expectations[0].size());
  py::array_t<std::complex<double>> expectations({rows, cols});
  auto e = expectations.mutable_unchecked<2>();
  for (py::ssize_t n = 0; n < rows; ++n) {
    for (py::ssize_t j = 0; j < cols; ++j) e(n, j) = s.expectations[n][j];
  }
  const auto m = static_cast<py::ssize_t>(s.classical.empty() ? 0 : s.classical[0].q.size());
  py::array_t<double> q({rows, m}), p({rows, m});
  auto qv = q.mutable_unchecked<2>();
  auto pv = p.mutable_unchecked<2>();
  for (py::ssize_t n = 0; n < rows; ++n) {
    for (py::ssize_t k = 0; k < m; ++k) {
      qv(n, k) = s.classical[n].q[k];
      pv(n, k) = s.classical[n].p[k];
    }
  }
  py::dict out;
  out["t"] = array(s.quantum_t);
  out["expectations"] = expectations;
  out["norm"] = array(s.norm);
  out["classical_q"] = q;
  out["classical_p"] = p;
  out["max_q_error"] = s.max_q_error;
  out["max_p_error"] = s.max_p_error;
  out["norm_drift"] = s.norm_drift;
  out["energy_drift"] = s.energy_drift ? py::cast(*s.energy_drift) : py::none();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Poisson algebra and quantization maps on polynomial observables";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MismatchError>(m, "MismatchError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init([](const std::string& text, int dim) { return parse_polynomial(text, dim); }), py::arg("text"),
           py::arg("dim") = 1)
      .def_property_readonly("dim", &Polynomial::dim)
      .def("is_zero", &Polynomial::is_zero)
      .def("is_real", &Polynomial::is_real)
      .def("total_degree", &Polynomial::total_degree)
      .def("momentum_degree", &Polynomial::momentum_degree)
      .def("diff", [](const Polynomial& a, const std::string& v) { return diff(a, variable_named(v, a.dim())); })
      .def("__call__",
           [](const Polynomial& a, const std::vector<double>& point) {
             if (point.size() != a.num_vars()) throw MismatchError("point has the wrong number of coordinates");
             return eval(a, point);
           })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", [](const Polynomial& a) { return to_string(a); })
      .def("__repr__", [](const Polynomial& a) { return "Polynomial('" + to_string(a) + "')"; });

  py::class_<DiffOperator>(m, "Operator")
      .def("is_zero", &DiffOperator::is_zero)
      .def("__matmul__", [](const DiffOperator& a, const DiffOperator& b) { return compose(a, b); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("adjoint", [](const DiffOperator& a) { return formal_adjoint(a); })
      .def("__str__", [](const DiffOperator& a) { return to_string(a); })
      .def("__repr__", [](const DiffOperator& a) { return "Operator('" + to_string(a) + "')"; });

  m.def("parse", &parse_polynomial, py::arg("text"), py::arg("dim") = 1);
  m.def(
      "bracket", [](const Polynomial& f, const Polynomial& g, const std::string& space) {
        return (space_named(space) == Space::OnTQ ? bracket_t(phase(f, "T"), phase(g, "T"))
                                                  : bracket_v(phase(f, "V"), phase(g, "V")))
            .poly();
      },
      py::arg("f"), py::arg("g"), py::arg("space") = "V", "Poisson bracket {f, g} on V*Q ('V') or T*Q ('T').");
  m.def(
      "evolution_identity_defect",
      [](const Polynomial& f, const Polynomial& h) {
        return evolution_identity_defect(phase(f, "V"), phase(h, "V")).poly();
      },
      py::arg("f"), py::arg("h"));
  m.def(
      "quantize",
      [](const Polynomial& f, const std::string& map, const std::string& space) {
        return quantize(phase(f, space), map_named(map));
      },
      py::arg("f"), py::arg("map") = "schrodinger", py::arg("space") = "V");
  m.def("commutator", &commutator, py::arg("a"), py::arg("b"));
  m.def(
      "dirac_defect",
      [](const Polynomial& f, const Polynomial& g, const std::string& map, const std::string& space) {
        return dirac_defect(phase(f, space), phase(g, space), map_named(map));
      },
      py::arg("f"), py::arg("g"), py::arg("map") = "schrodinger", py::arg("space") = "V");
  m.def(
      "heisenberg_derivative",
      [](const DiffOperator& fhat, const Polynomial& h) { return heisenberg_derivative(fhat, phase(h, "V")); },
      py::arg("fhat"), py::arg("h"));

  py::class_<HamiltonianSpec>(m, "Config")
      .def_readonly("dim", &HamiltonianSpec::dim)
      .def_readonly("hamiltonian", &HamiltonianSpec::hamiltonian_text)
      .def_property_readonly("velocity", &HamiltonianSpec::velocity_values)
      .def_property_readonly("dt", [](const HamiltonianSpec& s) { return s.evolve.dt; })
      .def_property_readonly("steps", [](const HamiltonianSpec& s) { return s.evolve.steps; })
      .def_property_readonly("observables", [](const HamiltonianSpec& s) { return s.evolve.observable_text; });
  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));

  m.def(
      "check_dirac",
      [](const std::vector<int>& dims, unsigned trials, unsigned degree, std::uint64_t seed) {
        const RunReport r = run_check_dirac(dims, trials, degree, seed);
        return py::make_tuple(r.passed(), r.to_text());
      },
      py::arg("dims") = std::vector<int>{1, 2}, py::arg("trials") = 200, py::arg("degree") = 3, py::arg("seed") = 0,
      "Returns (passed, report text).");
  m.def(
      "evolve",
      [](const HamiltonianSpec& spec) {
        EvolveSeries s;
        {
          py::gil_scoped_release release;
          s = simulate_evolution(spec);
        }
        return evolve_dict(s);
      },
      py::arg("config"));
  m.def(
      "frame_compare",
      [](const HamiltonianSpec& spec) {
        const FrameCompareSeries s = simulate_frame_compare(spec, spec.velocity);
        return py::make_tuple(s.max_q_deviation, s.max_p_deviation);
      },
      py::arg("config"), "Returns (max q deviation, max p deviation) between the two frame routes.");
}
