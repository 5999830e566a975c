#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rsvd/errors.hpp"
#include "rsvd/svd.hpp"

namespace rsvd {

enum class SketchMethod { power, lanczos };

inline const char* to_string(SketchMethod m) {
  return m == SketchMethod::power ? "power" : "lanczos";
}

// Whether a gap-dependent budget targets the principal angle itself
// (tag family T6.1) or the spectral/Frobenius error norms (tag family
// T6.3, which carries an extra sqrt(n-p)/sqrt(epsilon) factor).
enum class BudgetTarget { angle, norm };

struct IterationBudget {
  std::size_t count;           // t (power steps) or d (Krylov degree)
  std::string theorem;         // which guarantee sized this budget
  double epsilon;
  double alpha;
  double failure_probability;  // 2 exp(-alpha^2/2) clamped to [0,1]
};

struct BoundVerdict {
  double bound_value;  // squared-norm units
  double measured;
  bool passed;
  double slack;        // relative tolerance that was applied
};

namespace detail {

inline std::size_t ceil_count(double x) {
  const double c = std::ceil(x);
  return c < 1.0 ? 1 : static_cast<std::size_t>(c);
}

inline void check_epsilon_unit(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw InvalidParamError("epsilon must lie in (0, 1]");
}

inline double clamped_failure_probability(double alpha) {
  return std::min(1.0, 2.0 * std::exp(-alpha * alpha / 2.0));
}

}  // namespace detail

// High-probability bound on the tangent of the k-dimensional principal
// angle between the target subspace and the span of a Gaussian start
// block after the nullspace projection step:
//   (sqrt(n-p) + sqrt(p) + alpha) / (sqrt(p) - sqrt(k) - alpha),
// valid except with probability 2 exp(-alpha^2/2).
inline double tan_theta_bound(std::size_t n, std::size_t p, std::size_t k,
                              double alpha) {
  if (k == 0 || k >= p || p > n)
    throw DimensionError("tan_theta_bound: need 0 < k < p <= n");
  const double margin =
      std::sqrt(double(p)) - std::sqrt(double(k)) - alpha;
  if (alpha <= 0.0 || margin <= 0.0)
    throw InvalidAlphaError(
        "tan_theta_bound: need 0 < alpha < sqrt(p) - sqrt(k)");
  return (std::sqrt(double(n - p)) + std::sqrt(double(p)) + alpha) / margin;
}

// Krylov degree for a Gaussian start:
//   d = sqrt(2/eps) * (5/2 + log2(tan_bound / eps)).
inline IterationBudget budget_lanczos_random(std::size_t n, std::size_t p,
                                             std::size_t k, double epsilon,
                                             double alpha) {
  detail::check_epsilon_unit(epsilon);
  const double bound = tan_theta_bound(n, p, k, alpha);
  const double d = std::sqrt(2.0 / epsilon) *
                   (2.5 + std::log2(bound / epsilon));
  return {detail::ceil_count(d), "T3.1-random", epsilon, alpha,
          detail::clamped_failure_probability(alpha)};
}

// Krylov degree when the start block already satisfies
// tan theta <= beta:  d = sqrt(2/eps) * (2 + log2(beta / eps)).
// Deterministic, so the failure probability is zero.
inline IterationBudget budget_lanczos_warm(double beta, double epsilon) {
  detail::check_epsilon_unit(epsilon);
  if (!(beta > 0.0))
    throw InvalidParamError("budget_lanczos_warm: beta must be > 0");
  const double d = std::sqrt(2.0 / epsilon) *
                   (2.0 + std::log2(beta / epsilon));
  return {detail::ceil_count(d), "T3.1-warm", epsilon, 0.0, 0.0};
}

// Power steps for a Gaussian start:
//   t = 1 + (1/eps) * log2(tan_bound / eps).
inline IterationBudget budget_power_gap_independent(std::size_t n,
                                                    std::size_t p,
                                                    std::size_t k,
                                                    double epsilon,
                                                    double alpha) {
  detail::check_epsilon_unit(epsilon);
  const double bound = tan_theta_bound(n, p, k, alpha);
  const double t = 1.0 + (1.0 / epsilon) * std::log2(bound / epsilon);
  return {detail::ceil_count(t), "T5.2-power", epsilon, alpha,
          detail::clamped_failure_probability(alpha)};
}

// Gap-dependent budgets. With gap = sigma_k / sigma_{p+1} and R the
// target ratio (tan_bound/eps for the angle target; an extra
// sqrt(n-p)/sqrt(eps) enters for the norm target):
//   power:   t = ln(R) / (2 ln(gap)),
//   lanczos: d = (1 + log2(R)) / sqrt(gap^2 - 1).
inline IterationBudget budget_gap_dependent(double sigma_k, double sigma_p1,
                                            std::size_t n, std::size_t p,
                                            std::size_t k, double epsilon,
                                            double alpha, SketchMethod method,
                                            BudgetTarget target =
                                                BudgetTarget::angle) {
  detail::check_epsilon_unit(epsilon);
  if (!(sigma_p1 > 0.0) || !(sigma_k > sigma_p1))
    throw NoGapError("budget_gap_dependent: need sigma_k > sigma_{p+1} > 0");
  const double tb = tan_theta_bound(n, p, k, alpha);
  const double ratio =
      (target == BudgetTarget::angle)
          ? tb / epsilon
          : std::sqrt(double(n - p)) * tb / std::sqrt(epsilon);
  const double gap = sigma_k / sigma_p1;
  double raw;
  std::string tag;
  if (method == SketchMethod::power) {
    raw = std::log(ratio) / (2.0 * std::log(gap));
    tag = (target == BudgetTarget::angle) ? "T6.1-power" : "T6.3-power";
  } else {
    raw = (1.0 + std::log2(ratio)) / std::sqrt(gap * gap - 1.0);
    tag = (target == BudgetTarget::angle) ? "T6.1-lanczos" : "T6.3-lanczos";
  }
  return {detail::ceil_count(raw), tag, epsilon, alpha,
          detail::clamped_failure_probability(alpha)};
}

// Chebyshev degree that contracts an initial angle by a factor eps given
// the eigenvalue gap lambda_k / lambda_{p+1}:
//   d = (1 + log2(1/eps)) / sqrt(lambda_ratio - 1).
inline std::size_t gap_contraction_degree(double lambda_ratio,
                                          double epsilon) {
  detail::check_epsilon_unit(epsilon);
  if (!(lambda_ratio > 1.0))
    throw NoGapError("gap_contraction_degree: need lambda_ratio > 1");
  return detail::ceil_count((1.0 + std::log2(1.0 / epsilon)) /
                            std::sqrt(lambda_ratio - 1.0));
}

enum class BoundKind { random, warm, frobenius };

// Numeric value of an error guarantee, in squared-norm units:
//   random:    sigma_{k+1}^2 + eps * sigma_{p+1}^2
//   warm:      (1 + eps) * sigma_{k+1}^2
//   frobenius: sum_{i>k} sigma_i^2 + eps * sigma_{p+1}^2
inline double bound_value(BoundKind kind, const std::vector<double>& sigma,
                          std::size_t k, std::size_t p, double epsilon) {
  if (k >= p || p > sigma.size())
    throw DimensionError("bound_value: need k < p <= number of sigmas");
  if (!(epsilon >= 0.0))
    throw InvalidParamError("bound_value: epsilon must be >= 0");
  const double sk1 = (k < sigma.size()) ? sigma[k] : 0.0;
  const double sp1 = (p < sigma.size()) ? sigma[p] : 0.0;
  switch (kind) {
    case BoundKind::warm:
      return (1.0 + epsilon) * sk1 * sk1;
    case BoundKind::frobenius: {
      double tail = 0.0;
      for (std::size_t i = k; i < sigma.size(); ++i) tail += sigma[i] * sigma[i];
      return tail + epsilon * sp1 * sp1;
    }
    case BoundKind::random:
    default:
      return sk1 * sk1 + epsilon * sp1 * sp1;
  }
}

inline double bound_value(BoundKind kind, const SvdFactorization& svd,
                          std::size_t k, std::size_t p, double epsilon) {
  return bound_value(kind, svd.sigma, k, p, epsilon);
}

inline BoundVerdict verify(double measured, double bound, double slack) {
  if (!(slack >= 0.0))
    throw InvalidParamError("verify: slack must be >= 0");
  return {bound, measured, measured <= bound * (1.0 + slack), slack};
}

// Cost model comparing a small-block Krylov solver (block size b < k,
// degree d_b) against the large-block one this library implements (block
// size p, degree d_p). Reported for planning only; the gap inputs are
// user estimates, so nothing here is asserted.
struct CostComparison {
  double degree_small;   // d_b
  double degree_large;   // d_p
  double time_small;     // ~ n^2 * b * d_b
  double time_large;     // ~ n^2 * p * d_p
  double memory_small;   // ~ n * b * d_b
  double memory_large;   // ~ n * p * d_p
  double passes_small;   // d_b
  double passes_large;   // d_p
};

inline CostComparison cost_comparison(double lambda_km1, double lambda_k,
                                      double lambda_kb, double lambda_p1,
                                      std::size_t k, std::size_t b,
                                      std::size_t p, std::size_t n,
                                      double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidParamError("cost_comparison: epsilon must lie in (0, 1)");
  if (b == 0 || k == 0 || p <= k || n < p)
    throw DimensionError("cost_comparison: need b >= 1, 0 < k < p <= n");
  if (!(lambda_km1 > lambda_k && lambda_k > lambda_kb &&
        lambda_kb >= lambda_p1 && lambda_p1 > 0.0))
    throw NoGapError(
        "cost_comparison: need lambda_{k-1} > lambda_k > lambda_{k+b} >= "
        "lambda_{p+1} > 0");
  const double d_b =
      (double(k) * std::log(lambda_km1 / (lambda_km1 - lambda_k)) +
       std::log(1.0 / epsilon)) /
      std::sqrt((lambda_k - lambda_kb) / lambda_kb);
  const double d_p = std::log(1.0 / epsilon) /
                     std::sqrt((lambda_k - lambda_p1) / lambda_p1);
  const double nn = double(n) * double(n);
  return {d_b,
          d_p,
          nn * double(b) * d_b,
          nn * double(p) * d_p,
          double(n) * double(b) * d_b,
          double(n) * double(p) * d_p,
          d_b,
          d_p};
}

}  // namespace rsvd
