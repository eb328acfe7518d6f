#include "saddle/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace saddle {

double gap_P(const SaddleProblem& problem, const ReferencePoint& ref, const Vector& x) {
  const double gx = evaluate(problem.g, x);
  if (!std::isfinite(gx)) return kInfinity;
  const Vector Ky_bar = problem.K.adjoint_apply(ref.y_bar);
  return gx - evaluate(problem.g, ref.x_bar) + Ky_bar.dot(x - ref.x_bar);
}

double gap_D(const SaddleProblem& problem, const ReferencePoint& ref, const Vector& y) {
  const double fy = evaluate(problem.fstar, y);
  if (!std::isfinite(fy)) return kInfinity;
  const Vector Kx_bar = problem.K.apply(ref.x_bar);
  return fy - evaluate(problem.fstar, ref.y_bar) - Kx_bar.dot(y - ref.y_bar);
}

LyapunovSample lyapunov_sample(const IterateWindow& w, const SaddleProblem& problem, const ReferencePoint& ref,
                               double delta, double alpha, double beta) {
  const Index n = problem.primal_dim();
  const Index m = problem.dual_dim();
  if (w.x_prev.size() != n || w.x_cur.size() != n || w.x_next.size() != n || w.y_prev.size() != m ||
      w.y_cur.size() != m) {
    throw InsufficientHistory("lyapunov_sample: window needs x_{n-1}, x_n, x_{n+1}, y_{n-1}, y_n");
  }
  if (!(w.lam_prev > 0.0 && w.lam_cur > 0.0 && w.lam_next > 0.0)) {
    throw InsufficientHistory("lyapunov_sample: window needs three positive steps");
  }

  const double eps = 1.0 / std::sqrt(delta);
  const double P_prev = gap_P(problem, ref, w.x_prev);
  const double P_cur = gap_P(problem, ref, w.x_cur);
  const double D_cur = gap_D(problem, ref, w.y_cur);

  LyapunovSample s;
  s.n = w.n;
  s.a_n = (w.x_cur - ref.x_bar).squaredNorm() + (w.y_prev - ref.y_bar).squaredNorm() / beta +
          2.0 * w.lam_prev * (1.0 + delta) * P_prev;
  s.a_next = (w.x_next - ref.x_bar).squaredNorm() + (w.y_cur - ref.y_bar).squaredNorm() / beta +
             2.0 * w.lam_cur * (1.0 + delta) * P_cur;

  const double r_prev = w.lam_cur / w.lam_prev;  // lambda_n / lambda_{n-1}
  const double r_next = w.lam_cur / w.lam_next;  // lambda_n / lambda_{n+1}
  const Vector z_cur = w.x_cur + delta * (w.x_cur - w.x_prev);

  s.step_conditions = {r_prev / delta - alpha * eps * r_next, 1.0 - alpha * r_next / eps,
                       1.0 - 1.0 / delta + delta * w.lam_next / w.lam_cur};
  s.b_terms = {
      s.step_conditions[0] * (w.x_next - z_cur).squaredNorm(),
      (1.0 - r_prev / delta) * (w.x_next - w.x_cur).squaredNorm(),
      delta * r_prev * (w.x_cur - w.x_prev).squaredNorm(),
      s.step_conditions[1] * (w.y_cur - w.y_prev).squaredNorm() / beta,
  };
  s.b_n = s.b_terms[0] + s.b_terms[1] + s.b_terms[2] + s.b_terms[3];
  s.eta_n = (1.0 + delta) * P_cur - delta * P_prev + D_cur;
  return s;
}

std::optional<std::int64_t> find_burn_in(std::span<const LyapunovSample> samples, int consecutive) {
  int run = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& c = samples[i].step_conditions;
    if (c[0] > 0.0 && c[1] > 0.0 && c[2] > 0.0) {
      if (++run == consecutive) return samples[i + 1 - static_cast<std::size_t>(consecutive)].n;
    } else {
      run = 0;
    }
  }
  return std::nullopt;
}

ErgodicAverage::ErgodicAverage(Mode mode, double head_weight, const Vector& head_point, Index dual_dim,
                               std::int64_t n1)
    : mode_(mode),
      started_(true),
      head_weight_(head_weight),
      x_num_(head_weight * head_point),
      y_num_(Vector::Zero(dual_dim)),
      n1_(n1) {
  if (!(head_weight >= 0.0)) throw std::invalid_argument("ErgodicAverage: head weight must be nonnegative");
}

void ErgodicAverage::update(double weight, const Vector& z, const Vector& y) {
  if (!started_) throw std::logic_error("ErgodicAverage: update before initialisation");
  if (!(weight > 0.0)) throw std::invalid_argument("ErgodicAverage: weight must be positive");
  require_length(z.size(), x_num_.size(), "ergodic primal");
  require_length(y.size(), y_num_.size(), "ergodic dual");
  s_ += weight;
  x_num_ += weight * z;
  y_num_ += weight * y;
  ++count_;
}

Vector ErgodicAverage::X() const {
  if (head_weight_ + s_ == 0.0) throw std::logic_error("ErgodicAverage: X undefined without weight");
  return x_num_ / (head_weight_ + s_);
}

Vector ErgodicAverage::Y() const {
  if (s_ == 0.0) throw std::logic_error("ErgodicAverage: Y undefined before the first update");
  return y_num_ / s_;
}

double saddle_residual(const SaddleProblem& problem, const Vector& x, const Vector& y, double probe_lambda) {
  if (!(probe_lambda > 0.0)) throw std::invalid_argument("saddle_residual: probe lambda must be positive");
  const double lam = probe_lambda;
  const double primal = (x - prox_eval(problem.g, x - lam * problem.K.adjoint_apply(y), lam)).norm();
  const double dual = (y - prox_eval(problem.fstar, y + lam * problem.K.apply(x), lam)).norm();
  return std::max(primal, dual);
}

}  // namespace saddle
