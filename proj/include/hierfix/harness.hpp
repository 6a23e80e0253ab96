#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hierfix/config.hpp"
#include "hierfix/diagnostics.hpp"

namespace hierfix {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // divergence, projection or oracle failure
inline constexpr int kExitUsage = 2;    // bad flags, config or constants

/// 17 significant digits, locale independent.
std::string format_double(double v);

void write_trace_csv(std::ostream& os, const IterationTrace& trace, bool certified);

struct SolveOutcome {
  RunResult result;
  std::optional<OracleResult> oracle;       // when certifying
  std::optional<double> final_vi_residual;  // when certifying
  std::string oracle_note;                  // why the oracle is missing, if it is
};

/// Assemble and run one experiment (no I/O).
SolveOutcome solve_experiment(const ExperimentSpec& spec);

int cmd_solve(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);
int cmd_compare(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);
int cmd_validate(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);
int cmd_oracle(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

/// Full CLI: args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hierfix
