#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace saddle {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Error taxonomy. Everything derives from a std exception so callers that do
// not care about the category can catch std::exception.

class LengthError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A configuration value violated one of its admissible bounds. `bound()` names
// the violated constraint, e.g. "delta > (sqrt(5)-1)/2".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string bound, const std::string& detail)
      : std::invalid_argument(bound + ": " + detail), bound_(std::move(bound)) {}
  const std::string& bound() const noexcept { return bound_; }

 private:
  std::string bound_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NormEstimateError : public std::runtime_error {
 public:
  NormEstimateError(double last_estimate, const std::string& what)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::int64_t iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  std::int64_t iteration() const noexcept { return iteration_; }

 private:
  std::int64_t iteration_;
};

class LinesearchStall : public std::runtime_error {
 public:
  LinesearchStall(std::int64_t iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  std::int64_t iteration() const noexcept { return iteration_; }

 private:
  std::int64_t iteration_;
};

class FeasibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedMetric : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InsufficientHistory : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require_length(Index got, Index expected, const char* what) {
  if (got != expected) {
    throw LengthError(std::string(what) + ": expected length " + std::to_string(expected) +
                      ", got " + std::to_string(got));
  }
}

}  // namespace saddle
