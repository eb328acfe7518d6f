#include "saddle/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include "saddle/driver.hpp"
#include "saddle/reference.hpp"

namespace saddle {

namespace {

struct Flags {
  std::string problem = "lasso1";
  std::string solver = "pdac";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> max_iters;
  double max_seconds = kInfinity;
  std::int64_t trace_every = 1;
  std::string output;
  std::string reference;

  std::optional<Index> rows, cols, nnz;
  std::optional<double> l1_weight;
  std::string matrix_file;
  bool swapped = false;

  std::optional<double> delta, alpha, beta, gamma, lambda0;
  double rho = 0.7;
  double lambda_cap = 1e6;
  double mu_corr = 10.0;
  double nu_corr = 10.0;
  std::optional<std::int64_t> n_hat, n_zero;
  std::optional<bool> nonmonotone;
  bool no_correction = false;

  std::optional<double> tau, sigma, step;
  double theta = 1.0;
  double alpha_ls = 0.99;
  double mu_ls = 0.7;
  double fista_beta = 0.7;
  double fista_lambda0 = 1.0;

  std::optional<std::uint64_t> ref_seed;
  std::int64_t ref_max_iters = 1'000'000;
  double ref_target = 1e-11;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path nnls_matrix_path(const Flags& f, Family family) {
  if (!f.matrix_file.empty()) return f.matrix_file;
  const char* dir = std::getenv("SADDLE_SOLVE_DATA");
  if (dir == nullptr) throw ConfigError("--matrix-file", "NNLS needs --matrix-file or SADDLE_SOLVE_DATA");
  const std::string stem = family == Family::NnlsWell ? "well1033" : "illc1033";
  for (const std::string& name : {stem + ".mtx", std::string(stem == "well1033" ? "WELL1033" : "ILLC1033") + ".mtx"}) {
    std::filesystem::path p = std::filesystem::path(dir) / name;
    if (std::filesystem::exists(p)) return p;
  }
  throw ConfigError("--matrix-file", "no " + stem + ".mtx under " + std::string(dir));
}

SaddleProblem build_problem(const Flags& f, Family family) {
  ProblemSpec spec = default_spec(family);
  if (f.seed) spec.seed = *f.seed;
  if (f.rows) spec.rows = *f.rows;
  if (f.cols) spec.cols = *f.cols;
  if (f.nnz) spec.sparsity = *f.nnz;
  if (f.l1_weight) spec.l1_weight = *f.l1_weight;
  if (f.swapped && !is_nnls(family)) throw ConfigError("--swapped", "only NNLS problems have a swapped form");
  if (is_lasso(family)) return gen_lasso(spec).first;
  if (is_game(family)) return gen_matrix_game(spec);
  spec.data_path = nnls_matrix_path(f, family);
  return load_nnls(spec, f.swapped);
}

// Starting point: zero primal and y0 = K x0 - b for least squares (the
// swapped form starts at u0 = -b, v0 = 0); uniform strategies for games.
std::pair<Vector, Vector> start_point(const SaddleProblem& p) {
  const Objective& obj = p.objective;
  if (obj.kind == ObjectiveKind::MatrixGame) {
    return {Vector::Constant(p.primal_dim(), 1.0 / static_cast<double>(p.primal_dim())),
            Vector::Constant(p.dual_dim(), 1.0 / static_cast<double>(p.dual_dim()))};
  }
  if (obj.on_dual) return {-obj.b, Vector::Zero(p.dual_dim())};
  return {Vector::Zero(p.primal_dim()), -obj.b};
}

RunOptions build_options(const Flags& f, Family family, SolverKind kind, const SaddleProblem& problem) {
  RunOptions o;
  o.kind = kind;
  o.trace_every = f.trace_every;
  o.budget.max_iter = f.max_iters.value_or(is_game(family) ? 100000 : 30000);
  o.budget.max_seconds = f.max_seconds;

  const bool accelerated = kind == SolverKind::ApdaC;
  SolverConfig& c = o.cfg;
  const bool unit_delta = accelerated || is_game(family);
  c.delta = f.delta.value_or(unit_delta ? 1.0 : 0.62);
  c.alpha = f.alpha.value_or(c.delta >= 1.0 ? 0.99 : 1.27);
  c.beta0 = f.beta.value_or(is_lasso(family) ? 1.0 / 400.0 : 1.0);
  c.gamma = f.gamma.value_or(accelerated ? problem.gamma : 0.0);
  c.lambda0 = f.lambda0.value_or(0.0);
  c.rho = f.rho;
  c.lambda_cap = f.lambda_cap;
  c.mu_corr = f.mu_corr;
  c.nu_corr = f.nu_corr;
  c.n_hat = f.n_hat.value_or(is_game(family) ? 40000 : 5000);
  c.n_zero = f.n_zero.value_or(2 * c.n_hat);
  c.nonmonotone = f.nonmonotone.value_or(kind == SolverKind::PdaC);
  c.correction = !f.no_correction;
  c.max_iter = o.budget.max_iter;
  c.seed = f.seed.value_or(0);
  if (kind == SolverKind::PdaC || accelerated) validate(c, accelerated);

  BaselineConfig& b = o.bcfg;
  b.beta = c.beta0;
  b.theta = f.theta;
  b.alpha_ls = f.alpha_ls;
  b.mu_ls = f.mu_ls;
  b.fista_beta = f.fista_beta;
  b.fista_lambda0 = f.fista_lambda0;
  switch (kind) {
    case SolverKind::Pda: {
      // tau sigma L^2 just below 1 with sigma / tau = beta
      const double L = problem.K.norm();
      b.tau = f.tau.value_or(0.999 / (std::sqrt(b.beta) * L));
      b.sigma = f.sigma.value_or(b.beta * b.tau);
      break;
    }
    case SolverKind::PdaL:
      b.tau = f.tau.value_or(std::sqrt(static_cast<double>(std::min(problem.primal_dim(), problem.dual_dim()))) /
                             frobenius_norm(problem.K));
      break;
    case SolverKind::Pgm: {
      const double L = problem.objective.K ? problem.objective.K->norm() : problem.K.norm();
      b.step = f.step.value_or(1.0 / (L * L));
      break;
    }
    default:
      break;
  }
  return o;
}

void add_problem_flags(CLI::App& app, Flags& f) {
  app.add_option("--problem", f.problem, "lasso1, lasso2, game1..game4, nnls-well, nnls-illc")->capture_default_str();
  app.add_option("--seed", f.seed, "generator seed (family default when omitted)");
  app.add_option("--rows", f.rows, "override m");
  app.add_option("--cols", f.cols, "override n");
  app.add_option("--nnz", f.nnz, "override LASSO sparsity s");
  app.add_option("--l1-weight", f.l1_weight, "override LASSO mu");
  app.add_option("--matrix-file", f.matrix_file, "Matrix Market file for NNLS");
  app.add_flag("--swapped", f.swapped, "NNLS with the quadratic on the primal side");
}

int do_reference(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto family = parse_family(f.problem);
  if (!family) throw ConfigError("--problem", "unknown problem '" + f.problem + "'");
  if (f.output.empty()) throw ConfigError("--output", "reference needs an output path");
  const SaddleProblem problem = build_problem(f, *family);
  ReferenceOptions opts;
  opts.max_iter = f.ref_max_iters;
  opts.residual_target = f.ref_target;
  opts.start_seed = f.ref_seed;
  ReferenceSolution sol = reference_solve(problem, opts);
  sol.label = f.problem;
  write_reference(f.output, sol);
  if (!sol.converged) {
    err << "warning: reference residual " << fmt(sol.residual) << " above target " << fmt(f.ref_target) << '\n';
  }
  out << "reference problem=" << f.problem << " phi_star=" << fmt(sol.phi_star) << " residual=" << fmt(sol.residual)
      << " iters=" << sol.iterations << '\n';
  return 0;
}

int do_run(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto family = parse_family(f.problem);
  if (!family) throw ConfigError("--problem", "unknown problem '" + f.problem + "'");
  const auto kind = parse_solver(f.solver);
  if (!kind) throw ConfigError("--solver", "unknown solver '" + f.solver + "'");

  const SaddleProblem problem = build_problem(f, *family);
  RunOptions options = build_options(f, *family, *kind, problem);
  if (!f.reference.empty()) {
    if (is_game(*family)) throw ConfigError("--reference", "games are measured by the PD gap");
    options.phi_star = read_reference(f.reference).phi_star;
  }

  std::ofstream file;
  std::ostream* csv = &out;
  if (!f.output.empty()) {
    file.open(f.output);
    if (!file) throw std::runtime_error("cannot write " + f.output);
    csv = &file;
  }
  *csv << "iter,seconds,metric,lambda,beta,corrections\n";
  TraceRow last;
  options.on_row = [&](const TraceRow& r) {
    *csv << r.iter << ',' << fmt(r.seconds) << ',' << fmt(r.metric) << ',' << fmt(r.lambda) << ',' << fmt(r.beta)
         << ',' << r.corrections << '\n';
    last = r;
  };

  const auto [x0, y0] = start_point(problem);
  auto summary = [&] {
    err << "summary solver=" << f.solver << " problem=" << f.problem << " iters=" << last.iter
        << " metric=" << fmt(last.metric) << " corrections=" << last.corrections << " seconds=" << fmt(last.seconds)
        << '\n';
  };
  try {
    run(problem, x0, y0, options);
  } catch (const DivergenceError& e) {
    csv->flush();
    err << "error: divergence: " << e.what() << '\n';
    summary();
    return 2;
  }
  csv->flush();
  summary();
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"First-order saddle-point solvers on LASSO, matrix games and NNLS", "saddle_solve"};
  app.fallthrough();
  add_problem_flags(app, f);
  app.add_option("--solver", f.solver, "pdac, apdac, pda, pdal, pgm, fista")->capture_default_str();
  app.add_option("--max-iters", f.max_iters, "iteration budget");
  app.add_option("--max-seconds", f.max_seconds, "wall-time budget");
  app.add_option("--trace-every", f.trace_every, "row interval")->capture_default_str();
  app.add_option("--output", f.output, "CSV trace (stdout when omitted) or reference file");
  app.add_option("--reference", f.reference, "reference file providing phi*");

  app.add_option("--delta", f.delta, "extrapolation");
  app.add_option("--alpha", f.alpha, "step safety");
  app.add_option("--rho", f.rho, "correction backtracking factor")->capture_default_str();
  app.add_option("--beta", f.beta, "dual/primal step ratio");
  app.add_option("--gamma", f.gamma, "strong convexity for apdac");
  app.add_option("--lambda0", f.lambda0, "initial step");
  app.add_option("--lambda-cap", f.lambda_cap, "step cap in nonmonotone mode")->capture_default_str();
  app.add_option("--mu-corr", f.mu_corr, "correction bound against zeta_0")->capture_default_str();
  app.add_option("--nu-corr", f.nu_corr, "correction bound against zeta_n")->capture_default_str();
  app.add_option("--n-hat", f.n_hat, "end of the (1+delta)/delta growth phase");
  app.add_option("--n-zero", f.n_zero, "end of the decaying growth phase");
  app.add_option("--nonmonotone", f.nonmonotone, "allow step growth (true/false)");
  app.add_flag("--no-correction", f.no_correction, "disable the correction step");

  app.add_option("--tau", f.tau, "pda/pdal primal step");
  app.add_option("--sigma", f.sigma, "pda dual step");
  app.add_option("--step", f.step, "pgm step");
  app.add_option("--theta", f.theta, "pdal initial theta")->capture_default_str();
  app.add_option("--alpha-ls", f.alpha_ls, "pdal acceptance constant")->capture_default_str();
  app.add_option("--mu-ls", f.mu_ls, "pdal shrink factor")->capture_default_str();
  app.add_option("--fista-beta", f.fista_beta, "fista shrink factor")->capture_default_str();
  app.add_option("--fista-lambda0", f.fista_lambda0, "fista initial step")->capture_default_str();

  CLI::App* ref = app.add_subcommand("reference", "high-accuracy solve writing phi*, x_bar, y_bar");
  ref->add_option("--ref-seed", f.ref_seed, "random start seed");
  ref->add_option("--ref-max-iters", f.ref_max_iters, "iteration cap")->capture_default_str();
  ref->add_option("--ref-target", f.ref_target, "fixed-point residual target")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for the flag list\n";
    return 1;
  }

  try {
    if (ref->parsed()) return do_reference(f, out, err);
    return do_run(f, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace saddle
