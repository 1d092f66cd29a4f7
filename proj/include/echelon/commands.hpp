#pragma once

#include <string>

#include "echelon/config.hpp"
#include "echelon/search.hpp"

namespace echelon {

/// Which curve to tabulate: the benefit itself or its x-derivative.
enum class CurveKind { value, deriv };

/// Writes (x, f(x, -m*beta)) rows to a CSV file with a parameter-echo
/// header. The derivative curve leaves a gap row at x = 0.
int cmd_curve(const RunConfig& config, CurveKind kind, int y_multiple, double x_lo,
              double x_hi, double step, const std::string& out_path);

/// Runs one condition check and writes its report. Returns the exit code:
/// 0 holds, 1 fails, 2 inconclusive.
int cmd_check(const RunConfig& config, const std::string& which,
              const std::string& out_path);

/// Seeded random-restart equilibrium search; writes a per-restart summary
/// and, when requested, trajectory CSVs next to it.
int cmd_search(const RunConfig& config, SearchKind kind, bool dump_trajectories,
               const std::string& out_path);

/// Brute-force residual scans over P^2 (the n = 2 oracle).
int cmd_scan(const RunConfig& config, SearchKind kind, const std::string& out_path);

/// Batch reproduction of the standard case study: curves, every condition
/// check, and the residual-scan oracles, with a manifest.
int cmd_reproduce(const RunConfig& config);

}  // namespace echelon
