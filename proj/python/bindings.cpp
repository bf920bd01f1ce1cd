#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cohstate/cli.hpp"
#include "cohstate/coherent.hpp"
#include "cohstate/fock.hpp"
#include "cohstate/json_io.hpp"
#include "cohstate/sampling.hpp"
#include "cohstate/table.hpp"
#include "cohstate/vibron.hpp"

namespace py = pybind11;
using namespace cohstate;

namespace {

NormalTerm make_term(Complex coeff, std::vector<int> creators, std::vector<int> annihilators) {
  return NormalTerm{coeff, std::move(creators), std::move(annihilators)};
}

EvalMode parse_mode(const std::string& s) {
  if (s == "auto") return EvalMode::Auto;
  if (s == "direct") return EvalMode::Direct;
  if (s == "grouped") return EvalMode::Grouped;
  throw py::value_error("mode must be 'auto', 'direct' or 'grouped'");
}

vibron::TransitionOperator parse_op(const std::string& s) {
  if (s == "D+") return vibron::TransitionOperator::DPlus;
  if (s == "D-") return vibron::TransitionOperator::DMinus;
  if (s == "Q+") return vibron::TransitionOperator::QPlus;
  if (s == "Q-") return vibron::TransitionOperator::QMinus;
  throw py::value_error("op must be one of 'D+', 'D-', 'Q+', 'Q-'");
}

vibron::Multipole parse_multipole(const std::string& s) {
  if (s == "dipole") return vibron::Multipole::Dipole;
  if (s == "quadrupole") return vibron::Multipole::Quadrupole;
  throw py::value_error("multipole must be 'dipole' or 'quadrupole'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Matrix elements between multi-species boson coherent states";

  py::register_exception<FrameError>(m, "FrameError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<CoherentFrame>(m, "Frame")
      .def(py::init([](const std::vector<std::vector<Complex>>& rows, double tol) {
             return CoherentFrame::validate(rows, tol);
           }),
           py::arg("rows"), py::arg("tol") = kFrameTolerance)
      .def_property_readonly("modes", &CoherentFrame::modes)
      .def_property_readonly("species", &CoherentFrame::species)
      .def("alpha", &CoherentFrame::alpha, py::arg("species"), py::arg("mode"))
      .def("rows", &CoherentFrame::rows)
      .def("to_json", [](const CoherentFrame& f) { return frame_to_json(f).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return frame_from_json(nlohmann::json::parse(text));
      });

  m.def("random_frame", [](std::uint64_t seed, int species, int modes) {
    Rng rng(seed);
    return random_frame(rng, species, modes);
  }, py::arg("seed"), py::arg("species"), py::arg("modes"));

  py::class_<OperatorPoly>(m, "Operator")
      .def(py::init<int>(), py::arg("modes"))
      .def_static("bilinear", &bilinear, py::arg("modes"), py::arg("i"), py::arg("j"),
                  py::arg("coeff") = Complex(1.0))
      .def_static("number", &number_operator, py::arg("modes"))
      .def_static("creator", &OperatorPoly::creator, py::arg("modes"), py::arg("i"))
      .def_static("annihilator", &OperatorPoly::annihilator, py::arg("modes"), py::arg("i"))
      .def_static("identity", &OperatorPoly::identity, py::arg("modes"),
                  py::arg("coeff") = Complex(1.0))
      .def_static("term", [](int modes, Complex coeff, std::vector<int> creators,
                             std::vector<int> annihilators) {
        return OperatorPoly::from_normal(modes, make_term(coeff, std::move(creators),
                                                          std::move(annihilators)));
      }, py::arg("modes"), py::arg("coeff"), py::arg("creators"), py::arg("annihilators"))
      .def_property_readonly("modes", &OperatorPoly::modes)
      .def("__len__", &OperatorPoly::size)
      .def("__add__", [](const OperatorPoly& a, const OperatorPoly& b) { return a + b; })
      .def("__sub__", [](const OperatorPoly& a, const OperatorPoly& b) { return a - b; })
      .def("__mul__", [](const OperatorPoly& a, const OperatorPoly& b) { return a * b; })
      .def("__mul__", [](const OperatorPoly& a, Complex c) { return c * a; })
      .def("__rmul__", [](const OperatorPoly& a, Complex c) { return c * a; })
      .def("normal_order", [](const OperatorPoly& p) { return simplify(normal_order(p)); })
      .def("adjoint", [](const OperatorPoly& p) { return adjoint(p); })
      .def("is_normal_ordered", &OperatorPoly::is_normal_ordered)
      .def("equivalent", [](const OperatorPoly& a, const OperatorPoly& b, double tol) {
        return equivalent(a, b, tol);
      }, py::arg("other"), py::arg("tol") = kMergeTolerance)
      .def("terms", [](const OperatorPoly& p) {
        py::list out;
        for (const auto& t : normal_order(p).normal_terms()) {
          out.append(py::make_tuple(t.coeff, t.creators, t.annihilators));
        }
        return out;
      }, "Normal-ordered terms as (coeff, creators, annihilators) tuples")
      .def("to_json", [](const OperatorPoly& p) { return operator_to_json(p).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return operator_from_json(nlohmann::json::parse(text));
      });

  m.def("matrix_element",
        [](const CoherentFrame& f, const Occupancy& bra, const Occupancy& ket,
           const OperatorPoly& p, const std::string& mode) {
          return matrix_element_poly(f, bra, ket, p, parse_mode(mode));
        },
        py::arg("frame"), py::arg("bra"), py::arg("ket"), py::arg("op"),
        py::arg("mode") = "auto");
  m.def("expectation",
        [](const CoherentFrame& f, const Occupancy& occ, const OperatorPoly& p) {
          return expectation(f, occ, p);
        },
        py::arg("frame"), py::arg("occupancy"), py::arg("op"));
  m.def("me_oracle",
        [](const CoherentFrame& f, const Occupancy& bra, const Occupancy& ket,
           const OperatorPoly& p) { return me_oracle(f, bra, ket, p); },
        py::arg("frame"), py::arg("bra"), py::arg("ket"), py::arg("op"));
  m.def("two_species_closed",
        [](const CoherentFrame& f, const Occupancy& bra, const Occupancy& ket, Complex coeff,
           std::vector<int> creators, std::vector<int> annihilators) {
          return two_species_closed(f, bra, ket,
                                    make_term(coeff, std::move(creators), std::move(annihilators)));
        },
        py::arg("frame"), py::arg("bra"), py::arg("ket"), py::arg("coeff"), py::arg("creators"),
        py::arg("annihilators"));
  m.def("count_contributing", &count_contributing, py::arg("species"), py::arg("body"));
  m.def("collect_partitions", &collect_partitions, py::arg("species"), py::arg("body"));
  m.def("basis_states", [](int modes, int bosons) { return FockBasis(modes, bosons).states(); },
        py::arg("modes"), py::arg("bosons"));

  auto vib = m.def_submodule("vibron", "Two-dimensional vibron model in its SO(3) limit");
  vib.def("exact_energy", &vibron::exact_energy, py::arg("N"), py::arg("v"), py::arg("l"));
  vib.def("spectrum", [](int N) {
    py::list out;
    for (const auto& lv : vibron::Spectrum(N).levels()) {
      out.append(py::make_tuple(lv.v, lv.l, lv.energy));
    }
    return out;
  }, py::arg("N"), "Exact levels as (v, l, energy) tuples ordered by (v, l)");
  vib.def("exact_transition",
          [](int N, int v_i, int l_i, int v_f, int l_f, const std::string& op) {
            return vibron::exact_transition(N, v_i, l_i, v_f, l_f, parse_op(op));
          },
          py::arg("N"), py::arg("v_i"), py::arg("l_i"), py::arg("v_f"), py::arg("l_f"),
          py::arg("op"));
  vib.def("variational_frame", &vibron::variational_frame, py::arg("r"));
  vib.def("variational_energy", &vibron::variational_energy, py::arg("N"), py::arg("Nx"),
          py::arg("r"));
  vib.def("cs_w2", &vibron::cs_w2, py::arg("N"), py::arg("Nx"), py::arg("r"));
  vib.def("cs_energy", &vibron::cs_energy, py::arg("N"), py::arg("Nx"));
  vib.def("minimize_r", &vibron::minimize_r, py::arg("N"));
  vib.def("cs_transition",
          [](int N, int Nx, int delta, const std::string& multipole, double r) {
            return vibron::cs_transition(N, Nx, delta, parse_multipole(multipole), r);
          },
          py::arg("N"), py::arg("Nx"), py::arg("delta"), py::arg("multipole"),
          py::arg("r") = 1.0);
  vib.def("compare_report", [](int N) {
    const auto rep = vibron::compare_report(N);
    py::dict out;
    out["energies"] = format_csv(rep.energies);
    out["dipole"] = format_csv(rep.dipole);
    out["quadrupole"] = format_csv(rep.quadrupole);
    return out;
  }, py::arg("N"), "CSV text of the energies, dipole and quadrupole tables");
  vib.def("operator", [](const std::string& name) {
    const auto& ops = vibron::operators();
    if (name == "l") return ops.l;
    if (name == "W2") return ops.w2;
    if (name == "H") return ops.hamiltonian;
    return vibron::transition_operator(parse_op(name));
  }, py::arg("name"), "One of 'l', 'W2', 'H', 'D+', 'D-', 'Q+', 'Q-'");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr)");
}
