#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pfl/assembly.hpp"
#include "pfl/bicoherent.hpp"
#include "pfl/blocks.hpp"
#include "pfl/commands.hpp"
#include "pfl/expression.hpp"
#include "pfl/fixtures.hpp"
#include "pfl/fock.hpp"
#include "pfl/overlaps.hpp"

namespace py = pybind11;
using namespace pfl;

namespace {

RealFunction as_function(const py::object& f) {
  if (py::isinstance<py::str>(f)) {
    return parse_expression(f.cast<std::string>());
  }
  if (py::isinstance<py::float_>(f) || py::isinstance<py::int_>(f)) {
    const double c = f.cast<double>();
    return [c](double) { return c; };
  }
  return f.cast<RealFunction>();
}

py::dict checks_to_dict(const std::vector<Check>& checks) {
  py::dict out;
  for (const Check& c : checks) {
    out[py::str(c.name)] = py::make_tuple(c.residual, c.tolerance, c.pass);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings of the pfl library";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<PositivityError>(m, "PositivityError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // fock
  py::class_<FockRep>(m, "FockRep")
      .def_readonly("cutoff", &FockRep::cutoff)
      .def_readonly("a_x", &FockRep::a_x)
      .def_readonly("a_y", &FockRep::a_y);
  m.def("build_fock_rep", &build_fock_rep, py::arg("cutoff"));

  py::class_<NoGoReport>(m, "NoGoReport")
      .def_readonly("theta", &NoGoReport::theta)
      .def_readonly("cutoffs", &NoGoReport::cutoffs)
      .def_readonly("min_singular_values", &NoGoReport::min_singular_values)
      .def_readonly("kernel_dimension_estimate", &NoGoReport::kernel_dimension_estimate)
      .def_readonly("kernel_tolerance", &NoGoReport::kernel_tolerance)
      .def("floor_non_decreasing", &NoGoReport::floor_non_decreasing, py::arg("relative_slack") = 1e-9);
  m.def(
      "nogo_joint_kernel",
      [](double theta, const std::vector<int>& cutoffs, double tol) { return nogo_joint_kernel(theta, cutoffs, tol); },
      py::arg("theta"), py::arg("cutoffs"), py::arg("kernel_tolerance") = kDefaultKernelTolerance);

  // overlaps
  py::class_<NCBosonParams>(m, "NCBosonParams")
      .def_static("from_coefficients", &NCBosonParams::from_coefficients, py::arg("alpha_x"),
                  py::arg("alpha_y"), py::arg("beta_x"), py::arg("beta_y"), py::arg("norm_tol") = 1e-10)
      .def_static("from_gamma", &NCBosonParams::from_gamma, py::arg("gamma"))
      .def_property_readonly("gamma", &NCBosonParams::gamma)
      .def_property_readonly("alpha_x", &NCBosonParams::alpha_x)
      .def_property_readonly("alpha_y", &NCBosonParams::alpha_y)
      .def_property_readonly("beta_x", &NCBosonParams::beta_x)
      .def_property_readonly("beta_y", &NCBosonParams::beta_y);
  m.def("overlap", &overlap, py::arg("n1"), py::arg("n2"), py::arg("k1"), py::arg("k2"), py::arg("gamma"));
  m.def("fock_expand_oracle", &fock_expand_oracle, py::arg("n1"), py::arg("n2"), py::arg("params"),
        py::arg("level_cap"));

  py::class_<GramBlock>(m, "GramBlock")
      .def_readonly("level", &GramBlock::level)
      .def_readonly("gamma", &GramBlock::gamma)
      .def_readonly("matrix", &GramBlock::matrix)
      .def("smallest_eigenvalue", &GramBlock::smallest_eigenvalue);
  m.def("gram_block", &gram_block, py::arg("level"), py::arg("gamma"));

  // blocks
  py::class_<BlockBasis>(m, "BlockBasis")
      .def_readonly("level", &BlockBasis::level)
      .def_readonly("h", &BlockBasis::h)
      .def_readonly("e", &BlockBasis::e)
      .def_property_readonly("source", [](const BlockBasis& b) { return std::string(to_string(b.source)); });
  m.def("realize_basis_cholesky", &realize_basis_cholesky, py::arg("gram"),
        py::arg("positivity_floor") = kPositivityFloor);
  m.def("paper_fixture", &paper_fixture, py::arg("level"), py::arg("gamma"));
  m.def("user_basis", &user_basis, py::arg("h"));

  py::class_<BlockSystem>(m, "BlockSystem")
      .def_readonly("basis", &BlockSystem::basis)
      .def_readonly("a", &BlockSystem::a)
      .def_readonly("b", &BlockSystem::b)
      .def_readonly("N", &BlockSystem::number)
      .def_readonly("S_h", &BlockSystem::s_h)
      .def_readonly("S_e", &BlockSystem::s_e)
      .def_readonly("sqrt_S_e", &BlockSystem::sqrt_s_e)
      .def_readonly("n", &BlockSystem::n_selfadjoint)
      .def_readonly("c", &BlockSystem::c)
      .def_readonly("e_by_kernel", &BlockSystem::kernel_dual)
      .def_readonly("anticommutator_diagonal", &BlockSystem::anticommutator_diagonal);
  m.def("build_block_system", &build_block_system, py::arg("basis"), py::arg("tol") = kCheckTolerance);
  m.def(
      "block_checks",
      [](const BlockSystem& s, double tol) { return checks_to_dict(block_checks(s, tol)); },
      py::arg("system"), py::arg("tol") = kCheckTolerance);
  m.def("fixture_formulas", &fixture_formulas, py::arg("level"), py::arg("gamma"));

  py::class_<DeformedNumberOperators>(m, "DeformedNumberOperators")
      .def_readonly("level", &DeformedNumberOperators::level)
      .def_readonly("m1_restricted", &DeformedNumberOperators::m1_restricted)
      .def_readonly("m2_restricted", &DeformedNumberOperators::m2_restricted)
      .def_readonly("h_restricted", &DeformedNumberOperators::h_restricted)
      .def("m1_action_residual", &DeformedNumberOperators::m1_action_residual)
      .def("m2_action_residual", &DeformedNumberOperators::m2_action_residual)
      .def("h_action_residual", &DeformedNumberOperators::h_action_residual)
      .def("commutator_residual", &DeformedNumberOperators::commutator_residual);
  m.def("deformed_number_operators", &deformed_number_operators, py::arg("params"), py::arg("level"));

  // assembly
  py::class_<GlobalOperators>(m, "GlobalOperators")
      .def_readonly("max_level", &GlobalOperators::max_level)
      .def_readonly("total_dim", &GlobalOperators::total_dim)
      .def_readonly("A", &GlobalOperators::A)
      .def_readonly("B", &GlobalOperators::B)
      .def_readonly("N", &GlobalOperators::N)
      .def_readonly("N_sharp", &GlobalOperators::N_sharp)
      .def_readonly("S_h", &GlobalOperators::S_h)
      .def_readonly("S_e", &GlobalOperators::S_e)
      .def_readonly("projections", &GlobalOperators::projections);
  m.def(
      "assemble",
      [](Complex gamma, int max_level, const std::string& mode) {
        if (mode != "cholesky" && mode != "fixture") throw ParameterError("mode must be cholesky or fixture");
        return assemble(gamma, max_level, mode == "fixture" ? Realization::paper_fixture : Realization::cholesky);
      },
      py::arg("gamma"), py::arg("max_level"), py::arg("mode") = "cholesky");
  m.def(
      "action_checks", [](const GlobalOperators& ops) { return checks_to_dict(action_checks(ops)); },
      py::arg("ops"));
  py::class_<ResolutionReport>(m, "ResolutionReport")
      .def_readonly("resolution_residual", &ResolutionReport::resolution_residual)
      .def_readonly("intertwining_defect", &ResolutionReport::intertwining_defect)
      .def_readonly("s_h_norms", &ResolutionReport::s_h_norms)
      .def_readonly("s_e_norms", &ResolutionReport::s_e_norms)
      .def_readonly("s_h_conditions", &ResolutionReport::s_h_conditions)
      .def_readonly("s_e_conditions", &ResolutionReport::s_e_conditions);
  m.def("global_resolution_check", &global_resolution_check, py::arg("ops"));

  // bicoherent
  py::class_<BicoherentFamily>(m, "BicoherentFamily")
      .def_property_readonly("n_states", &BicoherentFamily::n_states)
      .def_property_readonly("nodes", [](const BicoherentFamily& f) { return f.quadrature().nodes; })
      .def_property_readonly("weights", [](const BicoherentFamily& f) { return f.quadrature().weights; })
      .def("n_tilde", &BicoherentFamily::n_tilde, py::arg("x"));
  m.def(
      "build_family",
      [](int n, const py::object& alpha, const BlockBasis* basis, int quad) {
        if (basis == nullptr) return build_family(n, as_function(alpha), quad);
        return build_family(n, as_function(alpha), *basis, quad);
      },
      py::arg("n_states"), py::arg("alpha") = "0", py::arg("basis") = nullptr,
      py::arg("quadrature_order") = kDefaultQuadratureOrder);
  m.def("states_at", &states_at, py::arg("family"), py::arg("x"));
  m.def(
      "resolution_of_identity",
      [](const BicoherentFamily& f) {
        const OperatorResidual r = resolution_of_identity(f);
        return py::make_tuple(r.op, r.residual);
      },
      py::arg("family"));
  m.def(
      "upper_symbol", [](const BicoherentFamily& f, const py::object& fn) { return upper_symbol(f, as_function(fn)); },
      py::arg("family"), py::arg("classical"));
  m.def(
      "gauss_legendre",
      [](int order, double lo, double hi) {
        const QuadratureRule r = gauss_legendre(order, lo, hi);
        return py::make_tuple(r.nodes, r.weights);
      },
      py::arg("order"), py::arg("lo") = -1.0, py::arg("hi") = 1.0);

  // command-line entry point, returning (exit_code, stdout, stderr)
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
