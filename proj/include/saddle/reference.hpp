#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "saddle/diagnostics.hpp"

namespace saddle {

struct ReferenceOptions {
  std::int64_t max_iter = 1'000'000;
  double residual_target = 1e-11;
  std::int64_t polish_every = 500;
  std::optional<std::uint64_t> start_seed;  // random N(0,1) start instead of zero
};

/// High-accuracy solution of a least-squares family in original coordinates:
/// x_bar minimizes phi and y_bar = K x_bar - b.
struct ReferenceSolution {
  std::string label;
  Vector x_bar;
  Vector y_bar;
  double phi_star = 0.0;
  double residual = kInfinity;
  std::int64_t iterations = 0;
  bool converged = false;
};

/// FISTA with periodic support polishing (an exact solve restricted to the
/// current support). Stops at `residual_target`, at max_iter, or when neither
/// FISTA nor the polish improves over a full block. Throws UnsupportedMetric
/// for matrix games.
ReferenceSolution reference_solve(const SaddleProblem& problem, const ReferenceOptions& options = {});

/// The saddle point in the coordinates of `problem` (swapped NNLS maps
/// x_bar to the dual side), with its measured residual.
ReferencePoint to_reference_point(const SaddleProblem& problem, const ReferenceSolution& sol);

/// Text format: label, phi_star, residual, iterations, converged, then
/// "x <n> v..." and "y <m> v..." lines, all numbers printed with %.17g.
void write_reference(const std::filesystem::path& path, const ReferenceSolution& sol);
ReferenceSolution read_reference(const std::filesystem::path& path);

}  // namespace saddle
