#pragma once

#include <cstdint>

#include "saddle/problems.hpp"

namespace saddle {

/// Parameters of the corrected primal-dual method and its accelerated form.
struct SolverConfig {
  double delta = 0.62;      // extrapolation
  double alpha = 1.27;      // step safety, alpha < 1/sqrt(delta)
  double rho = 0.7;         // backtracking factor of the correction
  double mu_corr = 10.0;    // correction bound against zeta_0
  double nu_corr = 10.0;    // correction bound against zeta_n, kept above (1+delta)/delta
  double beta0 = 1.0;       // primal-dual step ratio (initial value for the accelerated method)
  double gamma = 0.0;       // strong convexity used by the accelerated method
  double lambda0 = 0.0;     // <= 0 selects 1 / (sqrt(beta0) * norm_upper_bound(K))
  double lambda_cap = 1e6;  // upper bound on steps in nonmonotone mode
  std::int64_t n_hat = 0;
  std::int64_t n_zero = 0;
  std::int64_t max_iter = 0;
  bool nonmonotone = false;
  bool correction = true;  // unsafe when false and delta < 1: no convergence claim
  std::uint64_t seed = 0;
};

/// Throws ConfigError naming the first violated bound:
///   delta > (sqrt(5)-1)/2 (delta >= 1 when `accelerated`), 0 < alpha < 1/sqrt(delta),
///   1 < nu <= mu, 0 < rho < 1, beta0 > 0, gamma >= 0, lambda_cap > 0, 0 <= n_hat <= n_zero.
void validate(const SolverConfig& cfg, bool accelerated = false);

/// Parameters of the comparison methods.
struct BaselineConfig {
  double tau = 0.0;         // primal step (PDA), initial step (PDA-L)
  double sigma = 0.0;       // dual step (PDA)
  double beta = 1.0;        // dual/primal ratio (PDA-L)
  double theta = 1.0;       // initial extrapolation carry (PDA-L)
  double alpha_ls = 0.99;   // PDA-L acceptance constant
  double mu_ls = 0.7;       // PDA-L shrink factor
  double fista_beta = 0.7;  // FISTA shrink factor
  double fista_lambda0 = 1.0;
  double step = 0.0;        // PGM fixed step
};

/// Iterates of every method. Index convention for the corrected method after
/// the n-th iteration: x_prev = x_n, x_cur = x_{n+1}, y_prev = y_n,
/// y_cur = y_{n+1}, z_cur = z_{n+1}, lam_prev = lambda_n (after correction),
/// lam_cur = lambda_{n+1}, lam_next = lambda_{n+2}.
struct SolverState {
  Vector x_prev, x_cur, z_cur;
  Vector y_prev, y_cur;
  Vector Ky_prev, Ky_cur;  // K^T y images
  Vector Kx_cur;           // K x_cur (PDA-L, PGM)
  Vector Kz_cur;           // K z_cur (FISTA momentum point)
  double lam_prev = 0.0, lam_cur = 0.0, lam_next = 0.0;
  double beta_prev = 1.0, beta_cur = 1.0;
  double theta = 1.0;  // PDA-L carry
  double t_momentum = 1.0;  // FISTA
  double zeta0 = 0.0;
  double zeta_cur = 0.0;
  std::int64_t iter = 0;
  std::int64_t correction_backtracks = 0;
  std::int64_t last_shrinks = 0;  // shrinks in the most recent iteration
};

inline constexpr int kMaxShrinks = 200;

/// Step 0 of the corrected method: lambda_0 = lambda_1 = cfg.lambda0 (or the
/// norm-free default), zeta_0 from the prox residuals at (x0, y0), K^T y0 cached.
SolverState init_state(const SaddleProblem& problem, const Vector& x0, const Vector& y0,
                       const SolverConfig& cfg, bool accelerated = false);

/// Starting state for the comparison methods (z_0 = x_0, lam_cur = tau or step).
SolverState init_baseline_state(const SaddleProblem& problem, const Vector& x0, const Vector& y0,
                                double initial_step);

/// Step multiplier phi_n: (1+delta)/delta for n <= n_hat,
/// (1+delta+n-n_hat)/(delta+n-n_hat) for n_hat < n <= n_zero, 1 afterwards.
/// Always 1 in monotone mode.
double phi_schedule(std::int64_t n, const SolverConfig& cfg);

/// Next step from the inverse local Lipschitz estimate of K^T.
double predict_step(double dy_norm, double Kdy_norm, double lam_next, double phi, const SolverConfig& cfg);

/// One outer iteration of the corrected method.
void pdac_iterate(SolverState& state, const SaddleProblem& problem, const SolverConfig& cfg);

/// x_{n+1} = Prox_{lambda g}(x_n - lambda K^T y_n) together with
/// zeta_{n+1} = ||x_{n+1} - x_n||.
struct PrimalCandidate {
  Vector x;
  double zeta = 0.0;
};
PrimalCandidate primal_candidate(const SaddleProblem& problem, const Vector& x, const Vector& Ky, double lambda);

/// Correction loop, run between the primal and dual half steps while
/// x_cur = x_n, Ky_cur = K^T y_n, lam_cur = lambda_n, lam_next = lambda_{n+1}.
/// Shrinks lambda_n by rho until the candidate satisfies
/// ||x_{n+1} - x_n|| <= min(mu zeta_0, nu zeta_n), capping lambda_{n+1} at
/// lambda_n (monotone) or phi lambda_n (nonmonotone) after each shrink.
/// Returns the number of shrinks; throws LinesearchStall after kMaxShrinks.
int correction_pass(SolverState& state, const SaddleProblem& problem, const SolverConfig& cfg, double phi,
                    PrimalCandidate& candidate);

/// Acceptance bound of the correction test, min(mu zeta_0, nu zeta_n), floored
/// at a rounding-level absolute value so that exact fixed points terminate.
double correction_bound(const SolverState& state, const SolverConfig& cfg);

/// One iteration of the accelerated method (requires delta >= 1).
void apdac_iterate(SolverState& state, const SaddleProblem& problem, const SolverConfig& cfg);

/// Fixed-step PDA. Throws ConfigError unless tau * sigma * L^2 < 1 (+1e-12).
void validate_pda(const BaselineConfig& bcfg, double op_norm);
void pda_iterate(SolverState& state, const SaddleProblem& problem, const BaselineConfig& bcfg);

/// PDA with linesearch on sqrt(beta) tau ||K^T dy|| <= alpha ||dy||.
void pdal_iterate(SolverState& state, const SaddleProblem& problem, const BaselineConfig& bcfg);

/// Proximal gradient on h(x) = 0.5||Kx - b||^2 with a fixed step.
void pgm_iterate(SolverState& state, const SaddleProblem& problem, const BaselineConfig& bcfg);

/// FISTA with backtracking on the quadratic upper bound; lam_cur carries the step.
void fista_iterate(SolverState& state, const SaddleProblem& problem, const BaselineConfig& bcfg);

/// t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2
double fista_momentum(double t);

}  // namespace saddle
