#include "saddle/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace saddle {

namespace {

const double kGoldenBound = (std::sqrt(5.0) - 1.0) / 2.0;
constexpr double kStepProductSlack = 1e-12;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_finite(const Vector& v, std::int64_t iter, const char* what) {
  if (!v.allFinite()) throw DivergenceError(iter, std::string("non-finite ") + what);
}

// alpha ||dy|| / (sqrt(beta) ||K^T dy||); shared by both methods so that the
// accelerated method with gamma = 0 reproduces the basic one bit for bit.
double lipschitz_step(double alpha, double dy_norm, double beta, double Kdy_norm) {
  return alpha * dy_norm / (std::sqrt(beta) * Kdy_norm);
}

struct DualHalf {
  Vector z, y, Ky;
  double dy_norm = 0.0;
  double Kdy_norm = 0.0;
};

// z = x_{n+1} + delta (x_{n+1} - x_n); y_{n+1} = Prox_{s f*}(y_n + s K z) with
// s = beta * lambda_{n+1}.
DualHalf dual_half(const SaddleProblem& problem, const SolverState& state, const Vector& x_next, double delta,
                   double beta, double lambda) {
  DualHalf out;
  out.z = x_next + delta * (x_next - state.x_cur);
  const double s = beta * lambda;
  Vector Kz = problem.K.apply(out.z);
  out.y = prox_eval(problem.fstar, state.y_cur + s * Kz, s);
  check_finite(out.y, state.iter, "dual iterate");
  problem.K.adjoint_apply(out.y, out.Ky);
  out.dy_norm = (out.y - state.y_cur).norm();
  out.Kdy_norm = (out.Ky - state.Ky_cur).norm();
  return out;
}

void advance(SolverState& state, PrimalCandidate&& cand, DualHalf&& dual, double lam_after) {
  state.x_prev = std::move(state.x_cur);
  state.x_cur = std::move(cand.x);
  state.z_cur = std::move(dual.z);
  state.y_prev = std::move(state.y_cur);
  state.y_cur = std::move(dual.y);
  state.Ky_prev = std::move(state.Ky_cur);
  state.Ky_cur = std::move(dual.Ky);
  state.lam_prev = state.lam_cur;
  state.lam_cur = state.lam_next;
  state.lam_next = lam_after;
  state.zeta_cur = cand.zeta;
  ++state.iter;
}

const Objective& least_squares_objective(const SaddleProblem& problem, const char* who) {
  const Objective& obj = problem.objective;
  if ((obj.kind != ObjectiveKind::Lasso && obj.kind != ObjectiveKind::Nnls) || obj.on_dual || !obj.K) {
    throw UnsupportedMetric(std::string(who) + " needs an unswapped least-squares problem");
  }
  return obj;
}

}  // namespace

void validate(const SolverConfig& cfg, bool accelerated) {
  if (accelerated) {
    if (!(cfg.delta >= 1.0)) throw ConfigError("delta >= 1", "accelerated method got delta = " + num(cfg.delta));
  } else if (!(cfg.delta > kGoldenBound)) {
    throw ConfigError("delta > (sqrt(5)-1)/2", "got delta = " + num(cfg.delta));
  }
  if (!(cfg.alpha > 0.0)) throw ConfigError("alpha > 0", "got alpha = " + num(cfg.alpha));
  if (!(cfg.alpha < 1.0 / std::sqrt(cfg.delta))) {
    throw ConfigError("alpha < 1/sqrt(delta)",
                      "got alpha = " + num(cfg.alpha) + ", 1/sqrt(delta) = " + num(1.0 / std::sqrt(cfg.delta)));
  }
  if (!(cfg.nu_corr > 1.0)) throw ConfigError("nu > 1", "got nu = " + num(cfg.nu_corr));
  if (!(cfg.nu_corr <= cfg.mu_corr)) {
    throw ConfigError("nu <= mu", "got nu = " + num(cfg.nu_corr) + ", mu = " + num(cfg.mu_corr));
  }
  if (!(cfg.rho > 0.0)) throw ConfigError("rho > 0", "got rho = " + num(cfg.rho));
  if (!(cfg.rho < 1.0)) throw ConfigError("rho < 1", "got rho = " + num(cfg.rho));
  if (!(cfg.beta0 > 0.0)) throw ConfigError("beta > 0", "got beta = " + num(cfg.beta0));
  if (!(cfg.gamma >= 0.0)) throw ConfigError("gamma >= 0", "got gamma = " + num(cfg.gamma));
  if (!(cfg.lambda_cap > 0.0)) throw ConfigError("lambda_cap > 0", "got " + num(cfg.lambda_cap));
  if (!std::isfinite(cfg.lambda0)) throw ConfigError("lambda0 finite", "got " + num(cfg.lambda0));
  if (cfg.n_hat < 0) throw ConfigError("n_hat >= 0", "got " + std::to_string(cfg.n_hat));
  if (cfg.n_hat > cfg.n_zero) {
    throw ConfigError("n_hat <= n_zero",
                      "got n_hat = " + std::to_string(cfg.n_hat) + ", n_zero = " + std::to_string(cfg.n_zero));
  }
  if (cfg.max_iter < 0) throw ConfigError("max_iter >= 0", "got " + std::to_string(cfg.max_iter));
}

SolverState init_state(const SaddleProblem& problem, const Vector& x0, const Vector& y0, const SolverConfig& cfg,
                       bool accelerated) {
  validate(cfg, accelerated);
  require_length(x0.size(), problem.primal_dim(), "initial primal point");
  require_length(y0.size(), problem.dual_dim(), "initial dual point");

  double lambda0 = cfg.lambda0;
  if (lambda0 <= 0.0) {
    const double bound = norm_upper_bound(problem.K);
    lambda0 = bound > 0.0 ? 1.0 / (std::sqrt(cfg.beta0) * bound) : 1.0;
  }

  SolverState s;
  s.x_prev = x0;
  s.x_cur = x0;
  s.z_cur = x0;
  s.y_prev = y0;
  s.y_cur = y0;
  problem.K.adjoint_apply(y0, s.Ky_cur);
  s.Ky_prev = s.Ky_cur;
  s.lam_prev = s.lam_cur = s.lam_next = lambda0;
  s.beta_prev = s.beta_cur = cfg.beta0;

  const double sy = cfg.beta0 * lambda0;
  const Vector Kx0 = problem.K.apply(x0);
  const double primal_res = (x0 - prox_eval(problem.g, x0 - lambda0 * s.Ky_cur, lambda0)).norm();
  const double dual_res = (y0 - prox_eval(problem.fstar, y0 + sy * Kx0, sy)).norm();
  s.zeta0 = std::max(primal_res, dual_res);
  s.zeta_cur = s.zeta0;
  return s;
}

SolverState init_baseline_state(const SaddleProblem& problem, const Vector& x0, const Vector& y0,
                                double initial_step) {
  require_length(x0.size(), problem.primal_dim(), "initial primal point");
  require_length(y0.size(), problem.dual_dim(), "initial dual point");
  if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
    throw ConfigError("step > 0", "got " + num(initial_step));
  }
  SolverState s;
  s.x_prev = s.x_cur = s.z_cur = x0;
  s.y_prev = s.y_cur = y0;
  problem.K.adjoint_apply(y0, s.Ky_cur);
  s.Ky_prev = s.Ky_cur;
  problem.K.apply(x0, s.Kx_cur);
  s.Kz_cur = s.Kx_cur;
  s.lam_prev = s.lam_cur = s.lam_next = initial_step;
  return s;
}

double phi_schedule(std::int64_t n, const SolverConfig& cfg) {
  if (!cfg.nonmonotone) return 1.0;
  const double d = cfg.delta;
  if (n <= cfg.n_hat) return (1.0 + d) / d;
  if (n <= cfg.n_zero) {
    const auto k = static_cast<double>(n - cfg.n_hat);
    return (1.0 + d + k) / (d + k);
  }
  return 1.0;
}

double predict_step(double dy_norm, double Kdy_norm, double lam_next, double phi, const SolverConfig& cfg) {
  const double growth = cfg.nonmonotone ? phi * lam_next : lam_next;
  const double cap = cfg.nonmonotone ? cfg.lambda_cap : kInfinity;
  if (Kdy_norm == 0.0) return std::min(growth, cap);
  return std::min({lipschitz_step(cfg.alpha, dy_norm, cfg.beta0, Kdy_norm), growth, cap});
}

PrimalCandidate primal_candidate(const SaddleProblem& problem, const Vector& x, const Vector& Ky, double lambda) {
  PrimalCandidate c;
  c.x = prox_eval(problem.g, x - lambda * Ky, lambda);
  c.zeta = (c.x - x).norm();
  return c;
}

double correction_bound(const SolverState& state, const SolverConfig& cfg) {
  const double floor = 1e-14 * (1.0 + state.x_cur.norm());
  return std::max(std::min(cfg.mu_corr * state.zeta0, cfg.nu_corr * state.zeta_cur), floor);
}

int correction_pass(SolverState& state, const SaddleProblem& problem, const SolverConfig& cfg, double phi,
                    PrimalCandidate& candidate) {
  const double bound = correction_bound(state, cfg);
  int shrinks = 0;
  while (candidate.zeta > bound) {
    if (shrinks == kMaxShrinks) {
      throw LinesearchStall(state.iter, "correction exceeded " + std::to_string(kMaxShrinks) + " shrinks");
    }
    state.lam_cur *= cfg.rho;
    const double cap = cfg.nonmonotone ? phi * state.lam_cur : state.lam_cur;
    state.lam_next = std::min(cap, state.lam_next);
    candidate = primal_candidate(problem, state.x_cur, state.Ky_cur, state.lam_cur);
    ++shrinks;
  }
  state.correction_backtracks += shrinks;
  return shrinks;
}

void pdac_iterate(SolverState& state, const SaddleProblem& problem, const SolverConfig& cfg) {
  const double phi = phi_schedule(state.iter, cfg);
  PrimalCandidate cand = primal_candidate(problem, state.x_cur, state.Ky_cur, state.lam_cur);
  state.last_shrinks = 0;
  if (cfg.delta < 1.0 && cfg.correction) state.last_shrinks = correction_pass(state, problem, cfg, phi, cand);
  check_finite(cand.x, state.iter, "primal iterate");

  DualHalf dual = dual_half(problem, state, cand.x, cfg.delta, cfg.beta0, state.lam_next);
  const double lam_after = predict_step(dual.dy_norm, dual.Kdy_norm, state.lam_next, phi, cfg);
  advance(state, std::move(cand), std::move(dual), lam_after);
}

void apdac_iterate(SolverState& state, const SaddleProblem& problem, const SolverConfig& cfg) {
  if (!(cfg.delta >= 1.0)) throw ConfigError("delta >= 1", "accelerated method got delta = " + num(cfg.delta));
  PrimalCandidate cand = primal_candidate(problem, state.x_cur, state.Ky_cur, state.lam_cur);
  check_finite(cand.x, state.iter, "primal iterate");
  state.last_shrinks = 0;

  const double beta_n = state.beta_cur;
  const double beta_next = beta_n * (1.0 + cfg.gamma * state.lam_next);
  DualHalf dual = dual_half(problem, state, cand.x, cfg.delta, beta_next, state.lam_next);

  const double shrink = std::sqrt(beta_n / beta_next) * state.lam_next;
  const double lam_after =
      dual.Kdy_norm == 0.0 ? shrink
                           : std::min(lipschitz_step(cfg.alpha, dual.dy_norm, beta_next, dual.Kdy_norm), shrink);
  state.beta_prev = beta_n;
  state.beta_cur = beta_next;
  advance(state, std::move(cand), std::move(dual), lam_after);
}

void validate_pda(const BaselineConfig& bcfg, double op_norm) {
  if (!(bcfg.tau > 0.0)) throw ConfigError("tau > 0", "got " + num(bcfg.tau));
  if (!(bcfg.sigma > 0.0)) throw ConfigError("sigma > 0", "got " + num(bcfg.sigma));
  const double product = bcfg.tau * bcfg.sigma * op_norm * op_norm;
  if (!(product < 1.0 + kStepProductSlack)) {
    throw ConfigError("tau sigma L^2 < 1", "got " + num(product));
  }
}

void pda_iterate(SolverState& state, const SaddleProblem& problem, const BaselineConfig& bcfg) {
  const double tau = bcfg.tau;
  const double sigma = bcfg.sigma;
  Vector y_next = prox_eval(problem.fstar, state.y_cur + sigma * problem.K.apply(state.z_cur), sigma);
  check_finite(y_next, state.iter, "dual iterate");
  Vector Ky_next = problem.K.adjoint_apply(y_next);
  Vector x_next = prox_eval(problem.g, state.x_cur - tau * Ky_next, tau);
  check_finite(x_next, state.iter, "primal iterate");

  state.z_cur = 2.0 * x_next - state.x_cur;
  state.x_prev = std::move(state.x_cur);
  state.x_cur = std::move(x_next);
  state.y_prev = std::move(state.y_cur);
  state.y_cur = std::move(y_next);
  state.Ky_prev = std::move(state.Ky_cur);
  state.Ky_cur = std::move(Ky_next);
  state.lam_prev = state.lam_cur = state.lam_next = tau;
  ++state.iter;
}

void pdal_iterate(SolverState& state, const SaddleProblem& problem, const BaselineConfig& bcfg) {
  if (!(bcfg.alpha_ls > 0.0 && bcfg.alpha_ls < 1.0)) throw ConfigError("0 < alpha < 1", "got " + num(bcfg.alpha_ls));
  if (!(bcfg.mu_ls > 0.0 && bcfg.mu_ls < 1.0)) throw ConfigError("0 < mu < 1", "got " + num(bcfg.mu_ls));
  if (!(bcfg.beta > 0.0)) throw ConfigError("beta > 0", "got " + num(bcfg.beta));

  const double tau = state.lam_cur;
  Vector x_next = prox_eval(problem.g, state.x_cur - tau * state.Ky_cur, tau);
  check_finite(x_next, state.iter, "primal iterate");
  Vector Kx_next = problem.K.apply(x_next);

  const double sqrt_beta = std::sqrt(bcfg.beta);
  double tau_next = tau * std::sqrt(1.0 + state.theta);
  double theta = 0.0;
  Vector y_next, Ky_next;
  int shrinks = 0;
  for (;;) {
    theta = tau_next / tau;
    const double s = bcfg.beta * tau_next;
    const Vector Kz = Kx_next + theta * (Kx_next - state.Kx_cur);
    y_next = prox_eval(problem.fstar, state.y_cur + s * Kz, s);
    check_finite(y_next, state.iter, "dual iterate");
    problem.K.adjoint_apply(y_next, Ky_next);
    if (sqrt_beta * tau_next * (Ky_next - state.Ky_cur).norm() <= bcfg.alpha_ls * (y_next - state.y_cur).norm()) {
      break;
    }
    if (shrinks == kMaxShrinks) {
      throw LinesearchStall(state.iter, "PDA-L linesearch exceeded " + std::to_string(kMaxShrinks) + " shrinks");
    }
    tau_next *= bcfg.mu_ls;
    ++shrinks;
  }

  state.z_cur = x_next + theta * (x_next - state.x_cur);
  state.x_prev = std::move(state.x_cur);
  state.x_cur = std::move(x_next);
  state.Kx_cur = std::move(Kx_next);
  state.y_prev = std::move(state.y_cur);
  state.y_cur = std::move(y_next);
  state.Ky_prev = std::move(state.Ky_cur);
  state.Ky_cur = std::move(Ky_next);
  state.theta = theta;
  state.lam_prev = tau;
  state.lam_cur = state.lam_next = tau_next;
  state.last_shrinks = shrinks;
  state.correction_backtracks += shrinks;
  ++state.iter;
}

void pgm_iterate(SolverState& state, const SaddleProblem& problem, const BaselineConfig& bcfg) {
  const Objective& obj = least_squares_objective(problem, "PGM");
  if (!(bcfg.step > 0.0)) throw ConfigError("step > 0", "got " + num(bcfg.step));
  const Vector grad = obj.K->adjoint_apply(state.Kx_cur - obj.b);
  Vector x_next = prox_eval(problem.g, state.x_cur - bcfg.step * grad, bcfg.step);
  check_finite(x_next, state.iter, "primal iterate");
  state.x_prev = std::move(state.x_cur);
  state.x_cur = std::move(x_next);
  obj.K->apply(state.x_cur, state.Kx_cur);
  state.z_cur = state.x_cur;
  state.lam_prev = state.lam_cur = state.lam_next = bcfg.step;
  ++state.iter;
}

double fista_momentum(double t) { return (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0; }

void fista_iterate(SolverState& state, const SaddleProblem& problem, const BaselineConfig& bcfg) {
  const Objective& obj = least_squares_objective(problem, "FISTA");
  if (!(bcfg.fista_beta > 0.0 && bcfg.fista_beta < 1.0)) {
    throw ConfigError("0 < fista_beta < 1", "got " + num(bcfg.fista_beta));
  }
  const Vector& v = state.z_cur;
  const Vector grad = obj.K->adjoint_apply(state.Kz_cur - obj.b);

  // For the quadratic h the bound h(x+) <= h(v) + <grad, d> + ||d||^2 / (2 lam)
  // with d = x+ - v is exactly lam ||K d||^2 <= ||d||^2.
  double lam = state.lam_cur;
  Vector x_next;
  int shrinks = 0;
  for (;;) {
    x_next = prox_eval(problem.g, v - lam * grad, lam);
    check_finite(x_next, state.iter, "primal iterate");
    const Vector d = x_next - v;
    if (lam * obj.K->apply(d).squaredNorm() <= d.squaredNorm()) break;
    if (shrinks == kMaxShrinks) {
      throw LinesearchStall(state.iter, "FISTA backtracking exceeded " + std::to_string(kMaxShrinks) + " shrinks");
    }
    lam *= bcfg.fista_beta;
    ++shrinks;
  }

  const double t_next = fista_momentum(state.t_momentum);
  Vector v_next = x_next + ((state.t_momentum - 1.0) / t_next) * (x_next - state.x_cur);
  state.x_prev = std::move(state.x_cur);
  state.x_cur = std::move(x_next);
  state.z_cur = std::move(v_next);
  obj.K->apply(state.z_cur, state.Kz_cur);
  state.t_momentum = t_next;
  state.lam_prev = state.lam_cur = state.lam_next = lam;
  state.last_shrinks = shrinks;
  state.correction_backtracks += shrinks;
  ++state.iter;
}

}  // namespace saddle
