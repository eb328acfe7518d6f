#include "saddle/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "saddle/matrix_market.hpp"
#include "saddle/random.hpp"

namespace saddle {

namespace {

struct FamilyEntry {
  Family family;
  std::string_view name;
};

constexpr std::array<FamilyEntry, 8> kFamilies{{
    {Family::LassoWay1, "lasso1"},
    {Family::LassoWay2, "lasso2"},
    {Family::GameInstance1, "game1"},
    {Family::GameInstance2, "game2"},
    {Family::GameInstance3, "game3"},
    {Family::GameInstance4, "game4"},
    {Family::NnlsWell, "nnls-well"},
    {Family::NnlsIllc, "nnls-illc"},
}};

constexpr double kNnlsTolerance = 1e-12;
constexpr double kSimplexNonnegSlack = 1e-10;
constexpr double kSimplexSumSlack = 1e-8;

DenseMatrix random_dense(Index rows, Index cols, Rng& rng, auto&& draw) {
  DenseMatrix K(rows, cols);
  for (double& v : K.entries) v = draw(rng);
  return K;
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& e : kFamilies) {
    if (e.family == f) return e.name;
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& e : kFamilies) {
    if (e.name == name) return e.family;
  }
  return std::nullopt;
}

bool is_lasso(Family f) { return f == Family::LassoWay1 || f == Family::LassoWay2; }
bool is_game(Family f) {
  return f == Family::GameInstance1 || f == Family::GameInstance2 || f == Family::GameInstance3 ||
         f == Family::GameInstance4;
}
bool is_nnls(Family f) { return f == Family::NnlsWell || f == Family::NnlsIllc; }

void ProblemSpec::validate() const {
  if (rows <= 0) throw ConfigError("rows > 0", "got " + std::to_string(rows));
  if (cols <= 0) throw ConfigError("cols > 0", "got " + std::to_string(cols));
  if (is_lasso(family)) {
    if (sparsity < 0 || sparsity > cols) {
      throw ConfigError("0 <= sparsity <= cols", "got s = " + std::to_string(sparsity));
    }
    if (!(l1_weight >= 0.0)) throw ConfigError("l1_weight >= 0", "got " + std::to_string(l1_weight));
  }
}

ProblemSpec default_spec(Family f) {
  ProblemSpec spec;
  spec.family = f;
  switch (f) {
    case Family::LassoWay1:
      spec.seed = 1, spec.rows = 200, spec.cols = 1000, spec.sparsity = 10, spec.l1_weight = 0.1;
      break;
    case Family::LassoWay2:
      spec.seed = 1, spec.rows = 1000, spec.cols = 2000, spec.sparsity = 100, spec.l1_weight = 0.1;
      break;
    case Family::GameInstance1:
    case Family::GameInstance2:
      spec.seed = 100, spec.rows = 100, spec.cols = 100;
      break;
    case Family::GameInstance3:
      spec.seed = 100, spec.rows = 500, spec.cols = 100;
      break;
    case Family::GameInstance4:
      spec.seed = 100, spec.rows = 100, spec.cols = 200;
      break;
    case Family::NnlsWell:
    case Family::NnlsIllc:
      spec.seed = 1, spec.rows = 1033, spec.cols = 320;
      break;
  }
  return spec;
}

SaddleProblem make_lasso(LinearOperator K, Vector b, double l1_weight) {
  require_length(b.size(), K.rows(), "lasso observation");
  Objective obj;
  obj.kind = ObjectiveKind::Lasso;
  obj.K = K;
  obj.b = b;
  obj.l1_weight = l1_weight;
  return SaddleProblem{ScaledL1{l1_weight}, QuadShift{std::move(b)}, std::move(K), 0.0, std::move(obj),
                       "lasso"};
}

std::pair<SaddleProblem, GroundTruth> gen_lasso(const ProblemSpec& spec) {
  if (!is_lasso(spec.family)) throw ConfigError("family is a LASSO way", std::string(family_name(spec.family)));
  spec.validate();
  Rng rng(spec.seed);
  DenseMatrix K = random_dense(spec.rows, spec.cols, rng, [](Rng& r) { return r.normal(); });

  // s distinct positions by partial Fisher-Yates
  std::vector<Index> positions(static_cast<std::size_t>(spec.cols));
  std::iota(positions.begin(), positions.end(), Index{0});
  for (Index i = 0; i < spec.sparsity; ++i) {
    const auto j = static_cast<Index>(i + rng.below(static_cast<std::uint64_t>(spec.cols - i)));
    std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(j)]);
  }
  Vector w = Vector::Zero(spec.cols);
  for (Index i = 0; i < spec.sparsity; ++i) {
    double value = spec.family == Family::LassoWay1 ? rng.uniform(-10.0, 10.0) : rng.normal();
    // a zero draw would break the exact-sparsity contract
    while (value == 0.0) value = rng.normal();
    w[positions[static_cast<std::size_t>(i)]] = value;
  }

  LinearOperator op(std::move(K));
  Vector b = op.apply(w);
  for (Index i = 0; i < b.size(); ++i) b[i] += rng.normal(0.0, 0.1);

  SaddleProblem problem = make_lasso(op, b, spec.l1_weight);
  problem.label = std::string(family_name(spec.family));
  return {std::move(problem), GroundTruth{std::move(w), std::move(b)}};
}

SaddleProblem make_matrix_game(LinearOperator K) {
  Objective obj;
  obj.kind = ObjectiveKind::MatrixGame;
  obj.K = K;
  return SaddleProblem{IndSimplex{}, IndSimplex{}, std::move(K), 0.0, std::move(obj), "game"};
}

SaddleProblem gen_matrix_game(const ProblemSpec& spec) {
  if (!is_game(spec.family)) throw ConfigError("family is a game instance", std::string(family_name(spec.family)));
  spec.validate();
  Rng rng(spec.seed);
  DenseMatrix K;
  switch (spec.family) {
    case Family::GameInstance1:
      K = random_dense(spec.rows, spec.cols, rng, [](Rng& r) { return r.uniform(-1.0, 1.0); });
      break;
    case Family::GameInstance2:
      K = random_dense(spec.rows, spec.cols, rng, [](Rng& r) { return r.normal(); });
      break;
    case Family::GameInstance3:
      K = random_dense(spec.rows, spec.cols, rng, [](Rng& r) { return r.normal(0.0, 10.0); });
      break;
    default:
      K = random_dense(spec.rows, spec.cols, rng, [](Rng& r) { return r.uniform(); });
      break;
  }
  SaddleProblem problem = make_matrix_game(LinearOperator(std::move(K)));
  problem.label = std::string(family_name(spec.family));
  return problem;
}

SaddleProblem make_nnls(LinearOperator K, Vector b, bool swapped, double gamma) {
  require_length(b.size(), K.rows(), "nnls observation");
  Objective obj;
  obj.kind = ObjectiveKind::Nnls;
  obj.K = K;
  obj.b = b;
  obj.on_dual = swapped;
  if (!swapped) {
    return SaddleProblem{IndNonneg{}, QuadShift{std::move(b)}, std::move(K), 0.0, std::move(obj), "nnls"};
  }
  // min_u max_{v >= 0} 0.5||u + b||^2 + <-K^T u, v>
  LinearOperator minus_kt = K.transposed(-1.0);
  return SaddleProblem{QuadShift{std::move(b)}, IndNonneg{}, std::move(minus_kt), gamma, std::move(obj),
                       "nnls-swapped"};
}

SaddleProblem load_nnls(const ProblemSpec& spec, bool swapped) {
  if (!is_nnls(spec.family)) throw ConfigError("family is an NNLS instance", std::string(family_name(spec.family)));
  if (!spec.data_path) throw ConfigError("data path set", "NNLS needs a Matrix Market file");
  SparseMatrix K = read_matrix_market(*spec.data_path);
  Rng rng(spec.seed);
  Vector b(K.rows);
  for (Index i = 0; i < b.size(); ++i) b[i] = rng.normal();
  SaddleProblem problem = make_nnls(LinearOperator(std::move(K)), std::move(b), swapped);
  problem.label = std::string(family_name(spec.family)) + (swapped ? "-swapped" : "");
  return problem;
}

SparseMatrix random_sparse(Index rows, Index cols, double density, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Triplet> triplets;
  for (Index c = 0; c < cols; ++c) {
    bool any = false;
    for (Index r = 0; r < rows; ++r) {
      if (rng.uniform() < density) {
        triplets.push_back({r, c, rng.normal()});
        any = true;
      }
    }
    if (!any && rows > 0) {
      triplets.push_back({static_cast<Index>(rng.below(static_cast<std::uint64_t>(rows))), c, rng.normal()});
    }
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
}

double primal_objective(const SaddleProblem& problem, const Vector& x) {
  const Objective& obj = problem.objective;
  switch (obj.kind) {
    case ObjectiveKind::Lasso:
      return 0.5 * (obj.K->apply(x) - obj.b).squaredNorm() + obj.l1_weight * x.lpNorm<1>();
    case ObjectiveKind::Nnls:
      if (x.size() > 0 && x.minCoeff() < -kNnlsTolerance) return kInfinity;
      return 0.5 * (obj.K->apply(x) - obj.b).squaredNorm();
    case ObjectiveKind::MatrixGame:
      throw UnsupportedMetric("primal_objective: matrix games are measured by pd_gap_game");
    case ObjectiveKind::None:
      break;
  }
  throw UnsupportedMetric("primal_objective: problem has no primal objective");
}

double pd_gap_game(const LinearOperator& K, const Vector& x, const Vector& y) {
  require_length(x.size(), K.cols(), "pd_gap_game x");
  require_length(y.size(), K.rows(), "pd_gap_game y");
  auto check = [](const Vector& v, const char* name) {
    if (v.size() == 0) throw FeasibilityError(std::string(name) + " is empty");
    if (v.minCoeff() < -kSimplexNonnegSlack) {
      throw FeasibilityError(std::string(name) + " violates nonnegativity (min " +
                             std::to_string(v.minCoeff()) + ")");
    }
    if (std::abs(v.sum() - 1.0) > kSimplexSumSlack) {
      throw FeasibilityError(std::string(name) + " violates sum = 1 (sum " + std::to_string(v.sum()) + ")");
    }
  };
  check(x, "x");
  check(y, "y");
  return K.apply(x).maxCoeff() - K.adjoint_apply(y).minCoeff();
}

}  // namespace saddle
