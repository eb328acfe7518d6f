#include "saddle/prox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace saddle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Vector prox_l1(const Vector& x, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("prox_l1: threshold must be nonnegative");
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]) - t;
    out[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
  }
  return out;
}

Vector prox_quad_shift(const Vector& v, double s, const Vector& b) {
  if (!(s > 0.0)) throw std::invalid_argument("prox_quad_shift: scale must be positive");
  require_length(b.size(), v.size(), "prox_quad_shift shift");
  return (v - s * b) / (1.0 + s);
}

Vector proj_nonneg(const Vector& x) { return x.cwiseMax(0.0); }

Vector proj_simplex(const Vector& v) {
  if (v.size() == 0) throw LengthError("proj_simplex: empty vector");
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    prefix += sorted[k];
    const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  return (v.array() - tau).cwiseMax(0.0).matrix();
}

Vector prox_eval(const ProxFn& fn, const Vector& v, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("prox_eval: step must be positive");
  return std::visit(
      overloaded{
          [&](const Zero&) -> Vector { return v; },
          [&](const ScaledL1& f) -> Vector {
            if (!(f.weight >= 0.0)) throw std::invalid_argument("ScaledL1 weight must be nonnegative");
            return prox_l1(v, t * f.weight);
          },
          [&](const QuadShift& f) -> Vector { return prox_quad_shift(v, t, f.shift); },
          [&](const IndNonneg&) -> Vector { return proj_nonneg(v); },
          [&](const IndSimplex&) -> Vector { return proj_simplex(v); },
      },
      fn);
}

double evaluate(const ProxFn& fn, const Vector& x) {
  return std::visit(
      overloaded{
          [&](const Zero&) { return 0.0; },
          [&](const ScaledL1& f) { return f.weight * x.lpNorm<1>(); },
          [&](const QuadShift& f) {
            require_length(f.shift.size(), x.size(), "QuadShift evaluate");
            return 0.5 * (x + f.shift).squaredNorm();
          },
          [&](const IndNonneg&) {
            return x.size() == 0 || x.minCoeff() >= -kIndicatorTolerance ? 0.0 : kInfinity;
          },
          [&](const IndSimplex&) {
            if (x.size() == 0) return kInfinity;
            const bool ok = x.minCoeff() >= -kIndicatorTolerance &&
                            std::abs(x.sum() - 1.0) <= kIndicatorTolerance * static_cast<double>(x.size());
            return ok ? 0.0 : kInfinity;
          },
      },
      fn);
}

std::string describe(const ProxFn& fn) {
  return std::visit(overloaded{
                        [](const Zero&) { return std::string("zero"); },
                        [](const ScaledL1& f) { return "l1(" + std::to_string(f.weight) + ")"; },
                        [](const QuadShift&) { return std::string("quad_shift"); },
                        [](const IndNonneg&) { return std::string("ind_nonneg"); },
                        [](const IndSimplex&) { return std::string("ind_simplex"); },
                    },
                    fn);
}

}  // namespace saddle
