#include "saddle/reference.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "saddle/random.hpp"
#include "saddle/solvers.hpp"

namespace saddle {

namespace {

// The problem in original (unswapped) coordinates.
SaddleProblem original_form(const SaddleProblem& problem) {
  const Objective& obj = problem.objective;
  switch (obj.kind) {
    case ObjectiveKind::Lasso:
      return problem;
    case ObjectiveKind::Nnls:
      return obj.on_dual ? make_nnls(*obj.K, obj.b, false) : problem;
    default:
      throw UnsupportedMetric("reference_solve: only LASSO and NNLS have a reference solver");
  }
}

Eigen::MatrixXd dense_of(const LinearOperator& K) {
  DenseMatrix d = K.to_dense();
  Eigen::MatrixXd out(d.rows, d.cols);
  for (Index i = 0; i < d.rows; ++i) {
    for (Index j = 0; j < d.cols; ++j) out(i, j) = d(i, j);
  }
  return out;
}

// Exact minimizer restricted to the support of x (and its signs for LASSO).
std::optional<Vector> polish(const Objective& obj, const Eigen::MatrixXd& K, const Vector& x) {
  std::vector<Index> support;
  for (Index i = 0; i < x.size(); ++i) {
    if (obj.kind == ObjectiveKind::Lasso ? x[i] != 0.0 : x[i] > 0.0) support.push_back(i);
  }
  Vector out = Vector::Zero(x.size());
  if (support.empty()) return out;
  if (support.size() > static_cast<std::size_t>(K.rows())) return std::nullopt;

  const auto ks = static_cast<Index>(support.size());
  Eigen::MatrixXd Ks(K.rows(), ks);
  for (Index j = 0; j < ks; ++j) Ks.col(j) = K.col(support[j]);
  Vector rhs = Ks.transpose() * obj.b;
  if (obj.kind == ObjectiveKind::Lasso) {
    for (Index j = 0; j < ks; ++j) rhs[j] -= obj.l1_weight * (x[support[j]] > 0.0 ? 1.0 : -1.0);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(Ks.transpose() * Ks);
  if (ldlt.info() != Eigen::Success) return std::nullopt;
  Vector xs = ldlt.solve(rhs);
  if (!xs.allFinite()) return std::nullopt;
  for (Index j = 0; j < ks; ++j) {
    // a sign flip or negative entry means the support guess was wrong
    if (obj.kind == ObjectiveKind::Lasso && xs[j] * x[support[j]] < 0.0) return std::nullopt;
    if (obj.kind == ObjectiveKind::Nnls && xs[j] < 0.0) return std::nullopt;
    out[support[j]] = xs[j];
  }
  return out;
}

double residual_of(const SaddleProblem& original, const Vector& x) {
  const Objective& obj = original.objective;
  return saddle_residual(original, x, obj.K->apply(x) - obj.b);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ReferenceSolution reference_solve(const SaddleProblem& problem, const ReferenceOptions& options) {
  if (options.polish_every < 1) throw ConfigError("polish_every >= 1", std::to_string(options.polish_every));
  const SaddleProblem original = original_form(problem);
  const Objective& obj = original.objective;
  const Eigen::MatrixXd K = dense_of(*obj.K);

  Vector x0 = Vector::Zero(original.primal_dim());
  if (options.start_seed) {
    Rng rng(*options.start_seed);
    for (Index i = 0; i < x0.size(); ++i) x0[i] = rng.normal();
    if (obj.kind == ObjectiveKind::Nnls) x0 = x0.cwiseAbs();
  }
  Vector y0 = Vector::Zero(original.dual_dim());

  BaselineConfig bcfg;
  const double ub = norm_upper_bound(*obj.K);
  bcfg.fista_lambda0 = ub > 0.0 ? 2.0 / (ub * ub) : 1.0;
  SolverState state = init_baseline_state(original, x0, y0, bcfg.fista_lambda0);

  ReferenceSolution best;
  best.label = problem.label;
  best.x_bar = x0;
  best.residual = residual_of(original, x0);
  double last_phi = primal_objective(original, x0);
  int stalled_blocks = 0;

  while (best.residual > options.residual_target && state.iter < options.max_iter) {
    const std::int64_t block_end = std::min(options.max_iter, state.iter + options.polish_every);
    while (state.iter < block_end) fista_iterate(state, original, bcfg);

    bool improved = false;
    auto consider = [&](const Vector& x) {
      const double r = residual_of(original, x);
      if (r < best.residual) {
        best.residual = r;
        best.x_bar = x;
        improved = true;
      }
    };
    consider(state.x_cur);
    if (auto p = polish(obj, K, state.x_cur)) consider(*p);

    const double phi = primal_objective(original, state.x_cur);
    if (!improved && !(phi < last_phi)) {
      if (++stalled_blocks >= 3) break;
    } else {
      stalled_blocks = 0;
    }
    last_phi = std::min(last_phi, phi);
  }

  best.iterations = state.iter;
  best.y_bar = obj.K->apply(best.x_bar) - obj.b;
  best.phi_star = primal_objective(original, best.x_bar);
  best.converged = best.residual <= options.residual_target;
  return best;
}

ReferencePoint to_reference_point(const SaddleProblem& problem, const ReferenceSolution& sol) {
  ReferencePoint ref;
  if (problem.objective.on_dual) {
    ref.x_bar = sol.y_bar;
    ref.y_bar = sol.x_bar;
  } else {
    ref.x_bar = sol.x_bar;
    ref.y_bar = sol.y_bar;
  }
  require_length(ref.x_bar.size(), problem.primal_dim(), "reference x_bar");
  require_length(ref.y_bar.size(), problem.dual_dim(), "reference y_bar");
  ref.quality = saddle_residual(problem, ref.x_bar, ref.y_bar);
  return ref;
}

void write_reference(const std::filesystem::path& path, const ReferenceSolution& sol) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "label " << (sol.label.empty() ? "-" : sol.label) << '\n';
  out << "phi_star " << fmt(sol.phi_star) << '\n';
  out << "residual " << fmt(sol.residual) << '\n';
  out << "iterations " << sol.iterations << '\n';
  out << "converged " << (sol.converged ? 1 : 0) << '\n';
  auto vec = [&](const char* key, const Vector& v) {
    out << key << ' ' << v.size();
    for (Index i = 0; i < v.size(); ++i) out << ' ' << fmt(v[i]);
    out << '\n';
  };
  vec("x", sol.x_bar);
  vec("y", sol.y_bar);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ReferenceSolution read_reference(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  ReferenceSolution sol;
  std::string line;
  std::size_t lineno = 0;
  bool have_phi = false, have_x = false, have_y = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    auto read_vec = [&](Vector& v) {
      Index n = -1;
      if (!(ls >> n) || n < 0) throw ParseError(lineno, "bad vector length");
      v.resize(n);
      for (Index i = 0; i < n; ++i) {
        if (!(ls >> v[i])) throw ParseError(lineno, "vector has fewer than " + std::to_string(n) + " entries");
      }
    };
    if (key == "label") {
      ls >> sol.label;
    } else if (key == "phi_star") {
      if (!(ls >> sol.phi_star)) throw ParseError(lineno, "bad phi_star");
      have_phi = true;
    } else if (key == "residual") {
      if (!(ls >> sol.residual)) throw ParseError(lineno, "bad residual");
    } else if (key == "iterations") {
      ls >> sol.iterations;
    } else if (key == "converged") {
      int c = 0;
      ls >> c;
      sol.converged = c != 0;
    } else if (key == "x") {
      read_vec(sol.x_bar);
      have_x = true;
    } else if (key == "y") {
      read_vec(sol.y_bar);
      have_y = true;
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_phi || !have_x || !have_y) throw ParseError(lineno, "reference file is incomplete");
  return sol;
}

}  // namespace saddle
