#include "pfl/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "pfl/bicoherent.hpp"
#include "pfl/expression.hpp"
#include "pfl/fixtures.hpp"

namespace pfl {

namespace {

// Relative slack for "non-decreasing" comparisons of singular-value floors
// that have already converged to rounding level.
constexpr double kFloorSlack = 1e-9;

double parse_real(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

Json complex_param(Complex z) { return complex_to_json(z); }

void require_gamma_inside_disk(Complex gamma) {
  if (!(std::abs(gamma) < 1.0)) {
    throw ParameterError("|gamma| must be < 1");
  }
}

void require_fixture_gamma(Complex gamma) {
  if (gamma.imag() != 0.0 || !(gamma.real() > 0.0)) {
    throw ParameterError("fixture mode requires real gamma > 0");
  }
}

Realization parse_realization(const std::string& mode) {
  if (mode == "cholesky") return Realization::cholesky;
  if (mode == "fixture") return Realization::paper_fixture;
  throw ParameterError("mode must be 'cholesky' or 'fixture', got '" + mode + "'");
}

void add_block_matrices(ReportDocument& doc, const BlockSystem& sys, const std::string& prefix = {}) {
  doc.matrices.emplace_back(prefix + "h", sys.basis.h);
  doc.matrices.emplace_back(prefix + "e", sys.basis.e);
  doc.matrices.emplace_back(prefix + "e_by_kernel", sys.kernel_dual);
  doc.matrices.emplace_back(prefix + "a", sys.a);
  doc.matrices.emplace_back(prefix + "b", sys.b);
  doc.matrices.emplace_back(prefix + "N", sys.number);
  doc.matrices.emplace_back(prefix + "S_h", sys.s_h);
  doc.matrices.emplace_back(prefix + "S_e", sys.s_e);
  doc.matrices.emplace_back(prefix + "sqrt_S_e", sys.sqrt_s_e);
  doc.matrices.emplace_back(prefix + "n", sys.n_selfadjoint);
  doc.matrices.emplace_back(prefix + "c", sys.c);
}

Json real_list(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json real_list(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) {
    throw ParameterError("empty complex number");
  }
  if (s.back() != 'i') {
    return {parse_real(s, text), 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const auto imag_part = [&](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, text);
  };
  if (split == std::string::npos) {
    return {0.0, imag_part(s)};
  }
  return {parse_real(std::string_view(s).substr(0, split), text),
          imag_part(std::string_view(s).substr(split))};
}

ReportDocument cmd_gram(const GramCommand& cmd) {
  require_gamma_inside_disk(cmd.gamma);
  if (cmd.level < 0 || cmd.level > kMaxLevel) {
    throw ParameterError("level must lie in [0, " + std::to_string(kMaxLevel) + "]");
  }
  ReportDocument doc;
  doc.command = "gram";
  doc.parameters["gamma"] = complex_param(cmd.gamma);
  doc.parameters["level"] = cmd.level;

  const GramBlock gram = gram_block(cmd.level, cmd.gamma);
  const double least = gram.smallest_eigenvalue();
  doc.matrices.emplace_back("gram", gram.matrix);
  doc.data["least_eigenvalue"] = least;
  doc.data["condition_number"] = condition_number(gram.matrix);
  doc.checks.push_back(make_check("hermitian", hermiticity_defect(gram.matrix), 0.0));
  // Shortfall of the least eigenvalue below the positivity floor.
  doc.checks.push_back(make_check("positive_definite", std::max(0.0, kPositivityFloor - least), 0.0));
  return doc;
}

ReportDocument cmd_block(const BlockCommand& cmd) {
  const Realization mode = parse_realization(cmd.mode);
  ReportDocument doc;
  doc.command = "block";
  doc.parameters["gamma"] = complex_param(cmd.gamma);
  doc.parameters["level"] = cmd.level;
  doc.parameters["mode"] = cmd.mode;

  BlockBasis basis;
  if (mode == Realization::paper_fixture) {
    require_fixture_gamma(cmd.gamma);
    if (cmd.level != 1 && cmd.level != 2) {
      throw ParameterError("fixture mode requires level 1 or 2");
    }
    basis = paper_fixture(cmd.level, cmd.gamma.real());
  } else {
    require_gamma_inside_disk(cmd.gamma);
    if (cmd.level < 0 || cmd.level > kMaxLevel) {
      throw ParameterError("level must lie in [0, " + std::to_string(kMaxLevel) + "]");
    }
    basis = realize_basis_cholesky(gram_block(cmd.level, cmd.gamma));
  }
  const BlockSystem sys = build_block_system(basis);
  doc.data["source"] = std::string(to_string(sys.basis.source));
  doc.data["anticommutator_diagonal"] = real_list(sys.anticommutator_diagonal);
  add_block_matrices(doc, sys);
  doc.add_checks(block_checks(sys));
  if (mode == Realization::paper_fixture) {
    doc.add_checks(fixture_checks(sys, cmd.gamma.real()));
  }
  return doc;
}

ReportDocument cmd_nogo(const NoGoCommand& cmd) {
  const NoGoReport report = nogo_joint_kernel(cmd.theta, cmd.cutoffs, cmd.kernel_tolerance);
  ReportDocument doc;
  doc.command = "nogo";
  doc.parameters["theta"] = cmd.theta;
  doc.parameters["cutoffs"] = cmd.cutoffs;
  doc.parameters["kernel_tolerance"] = cmd.kernel_tolerance;
  doc.data["min_singular_values"] = real_list(report.min_singular_values);
  doc.data["kernel_dimension_estimate"] = report.kernel_dimension_estimate;
  doc.data["note"] = "finite-cutoff evidence only; not a proof about the untruncated space";

  if (cmd.theta == 0.0) {
    const double worst = *std::max_element(report.min_singular_values.begin(), report.min_singular_values.end());
    doc.checks.push_back(make_check("vacuum_in_joint_kernel", worst, 1e-12));
    doc.checks.push_back(make_check("kernel_dimension_one", std::abs(report.kernel_dimension_estimate - 1.0), 0.0));
  } else {
    double drop = 0.0;
    const auto& s = report.min_singular_values;
    for (std::size_t i = 1; i < s.size(); ++i) {
      drop = std::max(drop, (s[i - 1] - s[i]) / s[i - 1]);
    }
    doc.checks.push_back(make_check("min_singular_value_non_decreasing", drop, kFloorSlack));
    doc.checks.push_back(make_check("joint_kernel_empty", double(report.kernel_dimension_estimate), 0.0));
  }
  return doc;
}

ReportDocument cmd_assemble(const AssembleCommand& cmd) {
  const Realization mode = parse_realization(cmd.mode);
  if (mode == Realization::paper_fixture) {
    require_fixture_gamma(cmd.gamma);
  } else {
    require_gamma_inside_disk(cmd.gamma);
  }
  ReportDocument doc;
  doc.command = "assemble";
  doc.parameters["gamma"] = complex_param(cmd.gamma);
  doc.parameters["max_level"] = cmd.max_level;
  doc.parameters["mode"] = cmd.mode;

  const GlobalOperators ops = assemble(cmd.gamma, cmd.max_level, mode);
  const ResolutionReport res = global_resolution_check(ops);
  doc.data["total_dim"] = ops.total_dim;
  doc.data["s_h_norms"] = real_list(res.s_h_norms);
  doc.data["s_e_norms"] = real_list(res.s_e_norms);
  doc.data["s_h_conditions"] = real_list(res.s_h_conditions);
  doc.data["s_e_conditions"] = real_list(res.s_e_conditions);
  doc.data["s_h_norms_strictly_increasing"] = strictly_increasing(res.s_h_norms);
  doc.data["intertwining_defect"] = res.intertwining_defect;

  doc.matrices.emplace_back("A", ops.A);
  doc.matrices.emplace_back("B", ops.B);
  doc.matrices.emplace_back("N", ops.N);
  doc.matrices.emplace_back("N_sharp", ops.N_sharp);
  doc.matrices.emplace_back("S_h", ops.S_h);
  doc.matrices.emplace_back("S_e", ops.S_e);

  doc.add_checks(action_checks(ops));
  doc.checks.push_back(make_check("global_resolution_of_identity", res.resolution_residual, kCheckTolerance));
  doc.checks.push_back(make_check("intertwining_on_h_vectors", res.intertwining_defect, 1e-8));
  for (const BlockSystem& sys : ops.blocks) {
    doc.add_checks(block_checks(sys), "level" + std::to_string(sys.level()) + ".");
  }
  return doc;
}

ReportDocument cmd_bicoherent(const BicoherentCommand& cmd) {
  if (cmd.n_states < 1) {
    throw ParameterError("--n must be >= 1");
  }
  if (cmd.quadrature_order < 1) {
    throw ParameterError("--quad must be >= 1");
  }
  const RealFunction alpha = parse_expression(cmd.alpha);
  const RealFunction symbol = parse_expression(cmd.symbol);

  BlockBasis basis;
  if (cmd.basis == "orthonormal") {
    basis = user_basis(Matrix::Identity(cmd.n_states, cmd.n_states));
  } else if (cmd.basis == "cholesky") {
    require_gamma_inside_disk(cmd.gamma);
    basis = realize_basis_cholesky(gram_block(cmd.n_states - 1, cmd.gamma));
  } else if (cmd.basis == "fixture") {
    require_fixture_gamma(cmd.gamma);
    if (cmd.n_states != 2 && cmd.n_states != 3) {
      throw ParameterError("fixture basis requires --n 2 or 3");
    }
    basis = paper_fixture(cmd.n_states - 1, cmd.gamma.real());
  } else {
    throw ParameterError("basis must be orthonormal, cholesky or fixture");
  }

  ReportDocument doc;
  doc.command = "bicoherent";
  doc.parameters["n"] = cmd.n_states;
  doc.parameters["alpha"] = cmd.alpha;
  doc.parameters["quad"] = cmd.quadrature_order;
  doc.parameters["symbol"] = cmd.symbol;
  doc.parameters["basis"] = cmd.basis;
  doc.parameters["gamma"] = complex_param(cmd.gamma);

  const BicoherentFamily family = build_family(cmd.n_states, alpha, basis, cmd.quadrature_order);
  double pairing = 0.0, normalization = 0.0;
  for (double x : family.quadrature().nodes) {
    const auto [e_state, h_state] = states_at(family, x);
    pairing = std::max(pairing, std::abs(e_state.dot(h_state) - 1.0));
    normalization = std::max(normalization, std::abs(family.n_tilde(x) - family.n_plain(x)) / family.n_plain(x));
  }
  const OperatorResidual resolution = resolution_of_identity(family);
  const Matrix symbol_op = upper_symbol(family, symbol);

  doc.matrices.emplace_back("resolution", resolution.op);
  doc.matrices.emplace_back("upper_symbol", symbol_op);
  doc.checks.push_back(make_check("pairing_e_h_is_one", pairing, 1e-12));
  doc.checks.push_back(make_check("function_biorthogonality", function_biorthogonality_residual(family), 1e-12));
  doc.checks.push_back(make_check("n_tilde_independent_of_alpha", normalization, 1e-12));
  doc.checks.push_back(make_check("resolution_of_identity", resolution.residual, kCheckTolerance));
  return doc;
}

ReportDocument cmd_verify_paper(double gamma) {
  if (!(gamma > 0.0)) {
    throw ParameterError("verify-paper requires gamma > 0");
  }
  ReportDocument doc;
  doc.command = "verify-paper";
  doc.parameters["gamma"] = complex_param(gamma);
  for (int level : {1, 2}) {
    const BlockSystem sys = build_block_system(paper_fixture(level, gamma));
    const std::string prefix = "M" + std::to_string(level) + ".";
    add_block_matrices(doc, sys, prefix);
    doc.add_checks(fixture_checks(sys, gamma), prefix);
    doc.add_checks(block_checks(sys), prefix);
    doc.data[prefix + "anticommutator_diagonal"] = real_list(sys.anticommutator_diagonal);
  }
  // Printed overlaps the fixtures are designed to reproduce.
  const BlockBasis m1 = paper_fixture(1, gamma);
  const BlockBasis m2 = paper_fixture(2, gamma);
  const double g = gamma;
  doc.checks.push_back(make_check("M1.overlap_h0_h1", std::abs(m1.h.col(0).dot(m1.h.col(1)) - g), 1e-12));
  doc.checks.push_back(make_check("M2.overlap_h0_h1", std::abs(m2.h.col(0).dot(m2.h.col(1)) - std::sqrt(2.0) * g), 1e-12));
  doc.checks.push_back(make_check("M2.overlap_h1_h2", std::abs(m2.h.col(1).dot(m2.h.col(2)) - std::sqrt(2.0) * g), 1e-12));
  doc.checks.push_back(make_check("M2.overlap_h0_h2", std::abs(m2.h.col(0).dot(m2.h.col(2)) - g * g), 1e-12));
  return doc;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biorthogonal bases and pseudo-fermionic ladders from non-commutative bosons", "pfl"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the JSON report to this path instead of stdout");

  std::string gamma_text = "0";
  GramCommand gram_cmd;
  auto* gram = app.add_subcommand("gram", "Gram matrix of the level-M vectors");
  gram->add_option("--gamma", gamma_text, "Deformation parameter (complex, e.g. 0.5+0.3i)")->required();
  gram->add_option("--level", gram_cmd.level, "Level M")->required();
  gram->add_option("--out", out_path, "Output path");

  BlockCommand block_cmd;
  auto* block = app.add_subcommand("block", "Biorthogonal pair, ladders and intertwiners on one level");
  block->add_option("--gamma", gamma_text, "Deformation parameter")->required();
  block->add_option("--level", block_cmd.level, "Level M")->required();
  block->add_option("--mode", block_cmd.mode, "cholesky | fixture")->capture_default_str();
  block->add_option("--out", out_path, "Output path");

  NoGoCommand nogo_cmd;
  auto* nogo = app.add_subcommand("nogo", "Joint-kernel sweep of the theta-deformed annihilators");
  nogo->add_option("--theta", nogo_cmd.theta, "Non-commutativity parameter")->required();
  nogo->add_option("--cutoffs", nogo_cmd.cutoffs, "Per-mode cutoffs, increasing (comma separated)")
      ->required()
      ->delimiter(',');
  nogo->add_option("--kernel-tol", nogo_cmd.kernel_tolerance, "Singular-value kernel threshold")
      ->capture_default_str();
  nogo->add_option("--out", out_path, "Output path");

  AssembleCommand assemble_cmd;
  auto* assemble_app = app.add_subcommand("assemble", "Block-diagonal global operators up to a level cutoff");
  assemble_app->add_option("--gamma", gamma_text, "Deformation parameter")->required();
  assemble_app->add_option("--max-level", assemble_cmd.max_level, "Largest level")->required();
  assemble_app->add_option("--mode", assemble_cmd.mode, "cholesky | fixture")->capture_default_str();
  assemble_app->add_option("--out", out_path, "Output path");

  BicoherentCommand bico_cmd;
  std::string bico_gamma = "0.5";
  auto* bico = app.add_subcommand("bicoherent", "Bicoherent states, resolution of identity, upper symbols");
  bico->add_option("--n", bico_cmd.n_states, "Number of states")->required();
  bico->add_option("--alpha", bico_cmd.alpha, "Dressing function alpha(x)")->capture_default_str();
  bico->add_option("--quad", bico_cmd.quadrature_order, "Gauss-Legendre order")->capture_default_str();
  bico->add_option("--symbol", bico_cmd.symbol, "Classical function to quantize")->capture_default_str();
  bico->add_option("--basis", bico_cmd.basis, "orthonormal | cholesky | fixture")->capture_default_str();
  bico->add_option("--gamma", bico_gamma, "Deformation parameter for the vector basis")->capture_default_str();
  bico->add_option("--out", out_path, "Output path");

  std::string verify_gamma = "0.4";
  auto* verify = app.add_subcommand("verify-paper", "Check the M=1 and M=2 hand-picked realizations");
  verify->add_option("--gamma", verify_gamma, "Real gamma > 0")->capture_default_str();
  verify->add_option("--out", out_path, "Output path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "pfl: " << e.what() << "\n";
    return kExitUsage;
  }

  ReportDocument doc;
  try {
    if (*gram) {
      gram_cmd.gamma = parse_complex(gamma_text);
      doc = cmd_gram(gram_cmd);
    } else if (*block) {
      block_cmd.gamma = parse_complex(gamma_text);
      doc = cmd_block(block_cmd);
    } else if (*nogo) {
      doc = cmd_nogo(nogo_cmd);
    } else if (*assemble_app) {
      assemble_cmd.gamma = parse_complex(gamma_text);
      doc = cmd_assemble(assemble_cmd);
    } else if (*bico) {
      bico_cmd.gamma = parse_complex(bico_gamma);
      doc = cmd_bicoherent(bico_cmd);
    } else if (*verify) {
      const Complex g = parse_complex(verify_gamma);
      if (g.imag() != 0.0) throw ParameterError("verify-paper requires real gamma");
      doc = cmd_verify_paper(g.real());
    }
  } catch (const ParameterError& e) {
    err << "pfl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "pfl: " << e.what() << "\n";
    return kExitCheckFailure;
  }

  const std::string text = doc.dump();
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "pfl: cannot open " << out_path << " for writing\n";
      return kExitUsage;
    }
    file << text;
  }
  for (const Check& c : doc.checks) {
    if (!c.pass) err << "pfl: check failed: " << c.name << " (residual " << c.residual << " > " << c.tolerance << ")\n";
  }
  return doc.all_pass() ? kExitPass : kExitCheckFailure;
}

}  // namespace pfl
