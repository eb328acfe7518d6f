#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "saddle/diagnostics.hpp"
#include "saddle/solvers.hpp"

namespace saddle {

enum class SolverKind { PdaC, ApdaC, Pda, PdaL, Pgm, Fista };

/// pdac, apdac, pda, pdal, pgm, fista
std::string_view solver_name(SolverKind kind);
std::optional<SolverKind> parse_solver(std::string_view name);

struct Budget {
  std::int64_t max_iter = 0;
  double max_seconds = kInfinity;
};

/// One trace line. `lambda` is the current step (lambda_n, tau_n or the
/// gradient step), `beta` the current dual/primal ratio (0 for PGM/FISTA),
/// `corrections` the cumulative backtracking count.
struct TraceRow {
  std::int64_t iter = 0;
  double seconds = 0.0;
  double metric = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  std::int64_t corrections = 0;
};

struct IterationTrace {
  std::vector<TraceRow> rows;
  SolverState final_state;
};

struct RunOptions {
  SolverKind kind = SolverKind::PdaC;
  SolverConfig cfg;
  BaselineConfig bcfg;
  Budget budget;
  std::int64_t trace_every = 1;
  std::optional<double> phi_star;  // subtracted from phi when present
  std::function<void(const TraceRow&)> on_row;
  std::function<void(const SolverState&)> on_iterate;
};

/// Runs `kind` from (x0, y0) until the budget is exhausted. Rows are recorded
/// at iteration 0, every `trace_every` iterations and at the final iteration.
/// The metric is phi(x_n) (minus phi_star) for least-squares families and the
/// PD gap of the ergodic average for matrix games (the saddle residual when
/// the problem carries no objective). Wall time excludes metric
/// evaluation. Solver errors propagate after the rows recorded so far have
/// been passed to `on_row`.
IterationTrace run(const SaddleProblem& problem, const Vector& x0, const Vector& y0, const RunOptions& options);

/// Running weighted average matching the ergodic sequence of each method.
class ErgodicTracker {
 public:
  ErgodicTracker(SolverKind kind, double delta);
  void observe(const SolverState& state);
  const ErgodicAverage& average() const { return avg_; }

 private:
  SolverKind kind_;
  double delta_;
  ErgodicAverage avg_;
};

}  // namespace saddle
