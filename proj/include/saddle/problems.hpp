#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "saddle/linop.hpp"
#include "saddle/prox.hpp"

namespace saddle {

enum class Family {
  LassoWay1,
  LassoWay2,
  GameInstance1,
  GameInstance2,
  GameInstance3,
  GameInstance4,
  NnlsWell,
  NnlsIllc,
};

/// CLI name of a family: lasso1, lasso2, game1..game4, nnls-well, nnls-illc.
std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
bool is_lasso(Family f);
bool is_game(Family f);
bool is_nnls(Family f);

struct ProblemSpec {
  Family family = Family::LassoWay1;
  std::uint64_t seed = 1;
  Index rows = 0;      // m
  Index cols = 0;      // n
  Index sparsity = 0;  // s, LASSO only
  double l1_weight = 0.0;
  std::optional<std::filesystem::path> data_path;

  /// Throws ConfigError on nonpositive dims or s > n.
  void validate() const;
};

/// Experiment settings: LASSO way 1 is 200x1000 with s = 10, way 2 is
/// 1000x2000 with s = 100 (both mu = 0.1, seed 1); games use seed 100 with
/// 100x100, 100x100, 500x100 and 100x200; NNLS matrices are 1033x320.
ProblemSpec default_spec(Family f);

enum class ObjectiveKind { None, Lasso, Nnls, MatrixGame };

/// What the trace metric measures for a problem.
struct Objective {
  ObjectiveKind kind = ObjectiveKind::None;
  std::optional<LinearOperator> K;  // original (unswapped) operator
  Vector b;
  double l1_weight = 0.0;
  bool on_dual = false;  // swapped form: the original primal lives in the dual iterate
};

/// min_x max_y g(x) + <Kx, y> - fstar(y).
struct SaddleProblem {
  ProxFn g;
  ProxFn fstar;
  LinearOperator K;
  double gamma = 0.0;  // strong convexity of g
  Objective objective;
  std::string label;

  Index primal_dim() const { return K.cols(); }
  Index dual_dim() const { return K.rows(); }
};

struct GroundTruth {
  Vector w;
  Vector b;
};

/// K iid N(0,1); w with s nonzeros at uniform positions, values U[-10,10]
/// (way 1) or N(0,1) (way 2); b = Kw + noise with noise iid N(0, 0.1^2).
std::pair<SaddleProblem, GroundTruth> gen_lasso(const ProblemSpec& spec);
SaddleProblem make_lasso(LinearOperator K, Vector b, double l1_weight);

SaddleProblem gen_matrix_game(const ProblemSpec& spec);
SaddleProblem make_matrix_game(LinearOperator K);

/// NNLS from a Matrix Market file and b iid N(0,1). The swapped form puts the
/// strongly convex quadratic on the primal side with operator -K^T and
/// gamma = 1/2.
SaddleProblem load_nnls(const ProblemSpec& spec, bool swapped);
SaddleProblem make_nnls(LinearOperator K, Vector b, bool swapped, double gamma = 0.5);

/// Random m x n sparse matrix with iid N(0,1) values, each entry kept with
/// probability `density`. Every column gets at least one entry.
SparseMatrix random_sparse(Index rows, Index cols, double density, std::uint64_t seed);

/// phi(x) for least-squares families; x lives in the original primal space.
/// NNLS returns +infinity when some x_i < -1e-12. Throws UnsupportedMetric
/// for matrix games.
double primal_objective(const SaddleProblem& problem, const Vector& x);

/// max_i (Kx)_i - min_j (K^T y)_j for x, y on the simplices. Throws
/// FeasibilityError naming the violated constraint otherwise.
double pd_gap_game(const LinearOperator& K, const Vector& x, const Vector& y);

}  // namespace saddle
