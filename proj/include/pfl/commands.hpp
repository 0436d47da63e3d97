#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pfl/assembly.hpp"
#include "pfl/fock.hpp"
#include "pfl/report.hpp"

namespace pfl {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitUsage = 2 };

/// Accepts "0.5", "-0.2", "0.5+0.3i", "0.5-0.3i", "0.3i", "i".
Complex parse_complex(std::string_view text);

struct GramCommand {
  Complex gamma;
  int level = 0;
};

struct BlockCommand {
  Complex gamma;
  int level = 1;
  std::string mode = "cholesky";  // cholesky | fixture
};

struct NoGoCommand {
  double theta = 0.0;
  std::vector<int> cutoffs;
  double kernel_tolerance = kDefaultKernelTolerance;
};

struct AssembleCommand {
  Complex gamma;
  int max_level = 0;
  std::string mode = "cholesky";  // cholesky | fixture
};

struct BicoherentCommand {
  int n_states = 1;
  std::string alpha = "0";
  int quadrature_order = 64;
  std::string symbol = "1";
  std::string basis = "cholesky";  // orthonormal | cholesky | fixture
  Complex gamma{0.5, 0.0};
};

/// Each command validates its parameters (ParameterError on bad input),
/// runs the module, and returns the report with every check it performed.
ReportDocument cmd_gram(const GramCommand& cmd);
ReportDocument cmd_block(const BlockCommand& cmd);
ReportDocument cmd_nogo(const NoGoCommand& cmd);
ReportDocument cmd_assemble(const AssembleCommand& cmd);
ReportDocument cmd_bicoherent(const BicoherentCommand& cmd);
/// Both hand-picked fixtures (M = 1, 2) against their closed forms, plus the
/// full per-block invariant suite.
ReportDocument cmd_verify_paper(double gamma);

/// Parses `args` (without the program name), runs the subcommand, writes the
/// report to `out` or to --out, and returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfl
