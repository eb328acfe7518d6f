#include "saddle/driver.hpp"

#include <array>
#include <chrono>
#include <cmath>

namespace saddle {

namespace {

struct SolverEntry {
  SolverKind kind;
  std::string_view name;
};

constexpr std::array<SolverEntry, 6> kSolvers{{
    {SolverKind::PdaC, "pdac"},
    {SolverKind::ApdaC, "apdac"},
    {SolverKind::Pda, "pda"},
    {SolverKind::PdaL, "pdal"},
    {SolverKind::Pgm, "pgm"},
    {SolverKind::Fista, "fista"},
}};

double beta_column(SolverKind kind, const SolverState& s, const RunOptions& o) {
  switch (kind) {
    case SolverKind::PdaC:
      return o.cfg.beta0;
    case SolverKind::ApdaC:
      return s.beta_cur;
    case SolverKind::Pda:
      return o.bcfg.sigma / o.bcfg.tau;
    case SolverKind::PdaL:
      return o.bcfg.beta;
    default:
      return 0.0;
  }
}

}  // namespace

std::string_view solver_name(SolverKind kind) {
  for (const auto& e : kSolvers) {
    if (e.kind == kind) return e.name;
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (const auto& e : kSolvers) {
    if (e.name == name) return e.kind;
  }
  return std::nullopt;
}

ErgodicTracker::ErgodicTracker(SolverKind kind, double delta) : kind_(kind), delta_(delta) {}

void ErgodicTracker::observe(const SolverState& s) {
  using Mode = ErgodicAverage::Mode;
  switch (kind_) {
    case SolverKind::PdaC:
      // weights lambda_l on (z_l, y_l); head lambda_1 delta x_0
      if (!avg_.started()) avg_ = ErgodicAverage(Mode::PdaCWeights, s.lam_cur * delta_, s.x_prev, s.y_cur.size());
      avg_.update(s.lam_cur, s.z_cur, s.y_cur);
      break;
    case SolverKind::ApdaC:
      // weights beta_l lambda_l; head beta_1 lambda_1 delta x_0
      if (!avg_.started()) {
        avg_ = ErgodicAverage(Mode::ApdaCWeights, s.beta_cur * s.lam_cur * delta_, s.x_prev, s.y_cur.size());
      }
      avg_.update(s.beta_cur * s.lam_cur, s.z_cur, s.y_cur);
      break;
    default:
      // step-weighted average of the iterates themselves
      if (!avg_.started()) avg_ = ErgodicAverage(Mode::PdaCWeights, 0.0, s.x_cur, s.y_cur.size());
      avg_.update(s.lam_cur, s.x_cur, s.y_cur);
      break;
  }
}

IterationTrace run(const SaddleProblem& problem, const Vector& x0, const Vector& y0, const RunOptions& o) {
  if (o.trace_every < 1) throw ConfigError("trace_every >= 1", "got " + std::to_string(o.trace_every));
  if (o.budget.max_iter < 0) throw ConfigError("max_iter >= 0", "got " + std::to_string(o.budget.max_iter));

  IterationTrace trace;
  SolverState& state = trace.final_state;
  switch (o.kind) {
    case SolverKind::PdaC:
      state = init_state(problem, x0, y0, o.cfg, false);
      break;
    case SolverKind::ApdaC:
      state = init_state(problem, x0, y0, o.cfg, true);
      break;
    case SolverKind::Pda:
      validate_pda(o.bcfg, problem.K.norm());
      state = init_baseline_state(problem, x0, y0, o.bcfg.tau);
      break;
    case SolverKind::PdaL:
      state = init_baseline_state(problem, x0, y0, o.bcfg.tau);
      state.theta = o.bcfg.theta;
      break;
    case SolverKind::Pgm:
      state = init_baseline_state(problem, x0, y0, o.bcfg.step);
      break;
    case SolverKind::Fista:
      state = init_baseline_state(problem, x0, y0, o.bcfg.fista_lambda0);
      break;
  }

  const bool game = problem.objective.kind == ObjectiveKind::MatrixGame;
  const double delta = o.kind == SolverKind::PdaC || o.kind == SolverKind::ApdaC ? o.cfg.delta : 1.0;
  ErgodicTracker ergodic(o.kind, delta);

  auto metric = [&]() -> double {
    if (game) {
      const auto& avg = ergodic.average();
      if (!avg.started()) return pd_gap_game(problem.K, state.x_cur, state.y_cur);
      return pd_gap_game(problem.K, avg.X(), avg.Y());
    }
    if (problem.objective.kind == ObjectiveKind::None) return saddle_residual(problem, state.x_cur, state.y_cur);
    const Vector& x = problem.objective.on_dual ? state.y_cur : state.x_cur;
    const double phi = primal_objective(problem, x);
    return o.phi_star ? phi - *o.phi_star : phi;
  };

  using Clock = std::chrono::steady_clock;
  double elapsed = 0.0;
  auto record = [&] {
    TraceRow row{state.iter, elapsed, metric(), state.lam_cur, beta_column(o.kind, state, o),
                 state.correction_backtracks};
    trace.rows.push_back(row);
    if (o.on_row) o.on_row(row);
  };

  record();
  while (state.iter < o.budget.max_iter && elapsed < o.budget.max_seconds) {
    const auto start = Clock::now();
    switch (o.kind) {
      case SolverKind::PdaC:
        pdac_iterate(state, problem, o.cfg);
        break;
      case SolverKind::ApdaC:
        apdac_iterate(state, problem, o.cfg);
        break;
      case SolverKind::Pda:
        pda_iterate(state, problem, o.bcfg);
        break;
      case SolverKind::PdaL:
        pdal_iterate(state, problem, o.bcfg);
        break;
      case SolverKind::Pgm:
        pgm_iterate(state, problem, o.bcfg);
        break;
      case SolverKind::Fista:
        fista_iterate(state, problem, o.bcfg);
        break;
    }
    elapsed += std::chrono::duration<double>(Clock::now() - start).count();
    if (game) ergodic.observe(state);
    if (o.on_iterate) o.on_iterate(state);
    if (state.iter % o.trace_every == 0) record();
  }
  if (trace.rows.back().iter != state.iter) record();
  return trace;
}

}  // namespace saddle
