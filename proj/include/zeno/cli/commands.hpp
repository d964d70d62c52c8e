#pragma once

#include "zeno/cli/run_config.hpp"
#include "zeno/cli/table_writer.hpp"

namespace zeno::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// f_V on t = 0.01 k eps, k = 1 .. 100 (n_max + 1).
Table cmd_fv(const RunConfig& cfg);

/// Model and numeric f_P, f_V and S on the recursion samples, with minus/plus
/// rows at each projection instant. S uses cfg.source.
Table cmd_fp(const RunConfig& cfg);

/// Closed forms next to their numerical counterparts.
Table cmd_exact(const RunConfig& cfg);

/// Refinement table of the constrained-walk ratio plus the extrapolated row.
Table cmd_lattice(const RunConfig& cfg);

/// eps scan of ||delta psi|| with the timescale predictor.
Table cmd_pdx(const RunConfig& cfg);

/// Model against numeric f_P and S, with their differences.
Table cmd_compare(const RunConfig& cfg);

Table run_command(const RunConfig& cfg);

/// Writes to cfg.out ("-" for stdout) in cfg.format.
void emit(const Table& table, const RunConfig& cfg);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace zeno::cli
