#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rsvd/errors.hpp"
#include "rsvd/linalg.hpp"
#include "rsvd/matrix.hpp"
#include "rsvd/random.hpp"
#include "rsvd/svd.hpp"

namespace rsvd {

// Recipe for a synthetic test matrix: a singular value law plus the shape
// and the seed for the random singular bases.
struct SpectrumSpec {
  enum class Kind { geometric, polynomial, step, explicit_list };

  Kind kind = Kind::geometric;
  double ratio = 0.5;            // geometric: sigma_i = ratio^(i-1)
  double exponent = 1.0;         // polynomial: sigma_i = i^(-exponent)
  std::size_t gap_position = 1;  // step: first gap_position values are 1
  double gap_ratio = 2.0;        // step: the rest are 1/gap_ratio
  std::vector<double> values;    // explicit list, zero-padded to min(m,n)
  std::size_t m = 1;
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

inline const char* to_string(SpectrumSpec::Kind k) {
  switch (k) {
    case SpectrumSpec::Kind::geometric: return "geometric";
    case SpectrumSpec::Kind::polynomial: return "polynomial";
    case SpectrumSpec::Kind::step: return "step";
    default: return "explicit";
  }
}

// The designed singular values, descending, length min(m, n).
inline std::vector<double> sigma_values(const SpectrumSpec& spec) {
  if (spec.m == 0 || spec.n == 0)
    throw InvalidParamError("sigma_values: m and n must be >= 1");
  const std::size_t r = std::min(spec.m, spec.n);
  std::vector<double> sigma(r);
  switch (spec.kind) {
    case SpectrumSpec::Kind::geometric:
      if (!(spec.ratio > 0.0 && spec.ratio <= 1.0))
        throw InvalidParamError("sigma_values: ratio must lie in (0, 1]");
      for (std::size_t i = 0; i < r; ++i)
        sigma[i] = std::pow(spec.ratio, double(i));
      break;
    case SpectrumSpec::Kind::polynomial:
      if (!(spec.exponent >= 0.0))
        throw InvalidParamError("sigma_values: exponent must be >= 0");
      for (std::size_t i = 0; i < r; ++i)
        sigma[i] = std::pow(double(i + 1), -spec.exponent);
      break;
    case SpectrumSpec::Kind::step:
      if (spec.gap_position == 0)
        throw InvalidParamError("sigma_values: gap_position must be >= 1");
      if (!(spec.gap_ratio > 1.0))
        throw InvalidParamError("sigma_values: gap_ratio must be > 1");
      for (std::size_t i = 0; i < r; ++i)
        sigma[i] = (i < spec.gap_position) ? 1.0 : 1.0 / spec.gap_ratio;
      break;
    case SpectrumSpec::Kind::explicit_list:
      if (spec.values.empty() || spec.values.size() > r)
        throw InvalidParamError(
            "sigma_values: explicit list must have 1..min(m,n) entries");
      for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (!(spec.values[i] >= 0.0) ||
            (i > 0 && spec.values[i] > spec.values[i - 1]))
          throw InvalidParamError(
              "sigma_values: explicit list must be descending and >= 0");
        sigma[i] = spec.values[i];
      }
      for (std::size_t i = spec.values.size(); i < r; ++i) sigma[i] = 0.0;
      break;
  }
  return sigma;
}

struct SynthesizedMatrix {
  DenseMatrix M;
  SvdFactorization factors;  // the designed U, sigma, V
};

// M = U diag(sigma) V^T with U and V the QR factors of seeded Gaussian
// draws. Returning the designed factors lets callers evaluate error
// bounds without re-running an SVD.
inline SynthesizedMatrix synth_with_factors(const SpectrumSpec& spec) {
  std::vector<double> sigma = sigma_values(spec);
  const std::size_t r = sigma.size();
  SynthesizedMatrix out;
  out.factors.U =
      qr_thin(gaussian_matrix(spec.m, r, derive_seed(spec.seed, 1))).Q;
  out.factors.V =
      qr_thin(gaussian_matrix(spec.n, r, derive_seed(spec.seed, 2))).Q;
  out.factors.sigma = std::move(sigma);
  DenseMatrix Us(spec.m, r);
  for (std::size_t j = 0; j < r; ++j) {
    const double* u = out.factors.U.col(j);
    double* d = Us.col(j);
    for (std::size_t i = 0; i < spec.m; ++i)
      d[i] = u[i] * out.factors.sigma[j];
  }
  out.M = matmul_A_Bt(Us, out.factors.V);
  return out;
}

inline DenseMatrix synth_matrix(const SpectrumSpec& spec) {
  return synth_with_factors(spec).M;
}

}  // namespace rsvd
