#pragma once

#include <string>
#include <variant>

#include "saddle/common.hpp"

namespace saddle {

/// mu * ||x||_1
struct ScaledL1 {
  double weight = 0.0;
};

/// 0.5 * ||y + shift||^2 (the conjugate of 0.5 * ||p - shift||^2 up to a constant).
struct QuadShift {
  Vector shift;
};

/// Indicator of the nonnegative orthant.
struct IndNonneg {};

/// Indicator of the standard unit simplex.
struct IndSimplex {};

struct Zero {};

using ProxFn = std::variant<Zero, ScaledL1, QuadShift, IndNonneg, IndSimplex>;

/// Componentwise soft threshold sign(x) max(|x| - t, 0). |x_i| == t maps to 0.
Vector prox_l1(const Vector& x, double t);

/// Prox of s * QuadShift{b}: (v - s b) / (1 + s).
Vector prox_quad_shift(const Vector& v, double s, const Vector& b);

Vector proj_nonneg(const Vector& x);

/// Euclidean projection onto the unit simplex by sort and threshold.
Vector proj_simplex(const Vector& v);

/// Prox_{t fn}(v). Indicators ignore t; ScaledL1 folds it into the threshold t * weight.
Vector prox_eval(const ProxFn& fn, const Vector& v, double t);

/// Feasibility slack used when evaluating indicators.
inline constexpr double kIndicatorTolerance = 1e-9;

/// Function value; +infinity outside the domain of an indicator (with
/// kIndicatorTolerance slack).
double evaluate(const ProxFn& fn, const Vector& x);

std::string describe(const ProxFn& fn);

}  // namespace saddle
