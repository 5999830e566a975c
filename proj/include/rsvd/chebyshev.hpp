#pragma once

#include <cmath>
#include <cstddef>

#include "rsvd/errors.hpp"
#include "rsvd/linalg.hpp"
#include "rsvd/matrix.hpp"

namespace rsvd {

// Parameters of the soft spectral filter: everything at or below alpha is
// damped, everything at or above (1+gamma)*alpha is amplified, and the
// transition sharpens exponentially with the degree.
struct ChebParams {
  double alpha;        // damping threshold, > 0
  double gamma;        // relative width of the transition band, > 0
  std::size_t degree;  // polynomial degree, >= 1

  ChebParams(double alpha_, double gamma_, std::size_t degree_)
      : alpha(alpha_), gamma(gamma_), degree(degree_) {
    if (!(alpha > 0.0)) throw InvalidParamError("ChebParams: alpha must be > 0");
    if (!(gamma > 0.0)) throw InvalidParamError("ChebParams: gamma must be > 0");
    if (degree == 0) throw InvalidParamError("ChebParams: degree must be >= 1");
  }
};

// Chebyshev polynomial of the first kind by the three-term recurrence;
// valid for any real y.
inline double chebyshev_T(std::size_t d, double y) {
  if (d == 0) return 1.0;
  double prev = 1.0, cur = y;
  for (std::size_t j = 1; j < d; ++j) {
    const double next = 2.0 * y * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Closed form valid for y >= 1:
//   T_d(y) = ((y + sqrt(y^2-1))^d + (y - sqrt(y^2-1))^d) / 2.
inline double chebyshev_T_closed(std::size_t d, double y) {
  if (y < 1.0) throw InvalidParamError("chebyshev_T_closed: requires y >= 1");
  const double s = std::sqrt(y * y - 1.0);
  return 0.5 * (std::pow(y + s, double(d)) + std::pow(y - s, double(d)));
}

// Scalar filter value
//   phi(x) = (1+gamma) * alpha * T_d(x/alpha) / T_d(1+gamma)   for x > 0,
//   phi(x) = 0                                                 for x <= 0.
// On [0, alpha] the magnitude stays below alpha / 2^(d*sqrt(gamma) - 1),
// and phi(x) >= x from (1+gamma)*alpha on.
inline double phi(double x, const ChebParams& params) {
  if (x <= 0.0) return 0.0;
  const double denom = chebyshev_T(params.degree, 1.0 + params.gamma);
  return (1.0 + params.gamma) * params.alpha *
         chebyshev_T(params.degree, x / params.alpha) / denom;
}

// Apply the degree-d matrix filter to a block: computes
//   (1+gamma) * alpha * T_d(M M^T / alpha) / T_d(1+gamma) * X
// with the three-term recurrence, never forming M M^T. Each product is
// checked for overflow to non-finite values.
inline DenseMatrix apply_filter_block(const DenseMatrix& M,
                                      const DenseMatrix& X,
                                      const ChebParams& params) {
  if (M.rows() != X.rows())
    throw DimensionError("apply_filter_block: X must have rows(M) rows");
  const auto step = [&](const DenseMatrix& B) {
    DenseMatrix S = matmul(M, matmul_At_B(M, B));
    for (double& v : S.data()) v /= params.alpha;
    if (!S.all_finite())
      throw OverflowError("apply_filter_block: block overflowed");
    return S;
  };

  DenseMatrix prev = X;
  DenseMatrix cur = step(X);
  for (std::size_t j = 2; j <= params.degree; ++j) {
    DenseMatrix next = step(cur);
    for (std::size_t i = 0; i < next.data().size(); ++i)
      next.data()[i] = 2.0 * next.data()[i] - prev.data()[i];
    if (!next.all_finite())
      throw OverflowError("apply_filter_block: block overflowed");
    prev = std::move(cur);
    cur = std::move(next);
  }
  const double scale_factor =
      (1.0 + params.gamma) * params.alpha /
      chebyshev_T(params.degree, 1.0 + params.gamma);
  for (double& v : cur.data()) v *= scale_factor;
  if (!cur.all_finite())
    throw OverflowError("apply_filter_block: block overflowed");
  return cur;
}

}  // namespace rsvd
