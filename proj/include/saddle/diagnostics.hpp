#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "saddle/problems.hpp"

namespace saddle {

/// A numerical saddle point and its measured prox fixed-point residual.
struct ReferencePoint {
  Vector x_bar;
  Vector y_bar;
  double quality = kInfinity;
};

/// P(x) = g(x) - g(x_bar) + <K^T y_bar, x - x_bar>; +infinity outside dom g.
double gap_P(const SaddleProblem& problem, const ReferencePoint& ref, const Vector& x);

/// D(y) = f*(y) - f*(y_bar) - <K x_bar, y - y_bar>; +infinity outside dom f*.
double gap_D(const SaddleProblem& problem, const ReferencePoint& ref, const Vector& y);

/// Iterates around index n: x_{n-1}, x_n, x_{n+1}, y_{n-1}, y_n and the steps
/// lambda_{n-1}, lambda_n, lambda_{n+1}.
struct IterateWindow {
  std::int64_t n = 0;
  Vector x_prev, x_cur, x_next;
  Vector y_prev, y_cur;
  double lam_prev = 0.0, lam_cur = 0.0, lam_next = 0.0;
};

struct LyapunovSample {
  std::int64_t n = 0;
  double a_n = 0.0;
  double a_next = 0.0;  // a_{n+1}, computed from the same window
  double b_n = 0.0;
  double eta_n = 0.0;
  std::array<double, 4> b_terms{};          // the four summands of b_n
  std::array<double, 3> step_conditions{};  // burn-in expressions, all positive after burn-in
};

/// Energy a_n, decrement b_n (with epsilon = 1/sqrt(delta)) and eta_n for a
/// window of the corrected method run with constant beta. Throws
/// InsufficientHistory when a window vector is missing.
LyapunovSample lyapunov_sample(const IterateWindow& window, const SaddleProblem& problem, const ReferencePoint& ref,
                               double delta, double alpha, double beta);

/// First sample index after which the three step conditions stay positive for
/// `consecutive` samples in a row (returns that sample's n). nullopt when no
/// such run exists.
std::optional<std::int64_t> find_burn_in(std::span<const LyapunovSample> samples, int consecutive = 50);

/// Weighted running averages
///   X_j = (head_weight x_head + sum w_l z_l) / (head_weight + s_j),
///   Y_j = sum w_l y_l / s_j,  s_j = sum w_l.
class ErgodicAverage {
 public:
  enum class Mode { PdaCWeights, ApdaCWeights };

  ErgodicAverage() = default;
  ErgodicAverage(Mode mode, double head_weight, const Vector& head_point, Index dual_dim, std::int64_t n1 = 1);

  /// Throws std::invalid_argument for a nonpositive weight.
  void update(double weight, const Vector& z, const Vector& y);

  Vector X() const;
  Vector Y() const;
  double total_weight() const { return s_; }
  double head_weight() const { return head_weight_; }
  std::int64_t start_index() const { return n1_; }
  std::int64_t updates() const { return count_; }
  Mode mode() const { return mode_; }
  bool started() const { return started_; }

 private:
  Mode mode_ = Mode::PdaCWeights;
  bool started_ = false;
  double head_weight_ = 0.0;
  double s_ = 0.0;
  Vector x_num_;
  Vector y_num_;
  std::int64_t n1_ = 1;
  std::int64_t count_ = 0;
};

/// max{||x - Prox_{lam g}(x - lam K^T y)||, ||y - Prox_{lam f*}(y + lam K x)||}:
/// zero exactly at saddle points.
double saddle_residual(const SaddleProblem& problem, const Vector& x, const Vector& y, double probe_lambda = 1.0);

}  // namespace saddle
