#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "rsvd/errors.hpp"
#include "rsvd/linalg.hpp"
#include "rsvd/matrix.hpp"
#include "rsvd/random.hpp"
#include "rsvd/svd.hpp"

namespace rsvd {

struct InitializationReport {
  DenseMatrix Z;               // p x k, orthonormal columns
  double tan_theta;            // measured tan of the k-dim principal angle
  double bound;                // high-probability bound on tan_theta
  double alpha;                // deviation parameter the bound was built with
  double failure_probability;  // 2 exp(-alpha^2 / 2)
  double nullspace_residual;   // max |(C_2 Z)_{ij}|, ~0 by construction
};

// Given the orthogonal basis U (n x n, leading k columns span the target
// subspace) and a start block X (n x p, full column rank), build an
// orthonormal Z (p x k) such that the middle block rows k..p-1 of U^T X Z
// vanish. Z is obtained as an orthonormal basis of the nullspace of that
// middle block, so the construction is exact up to roundoff.
inline DenseMatrix construct_Z(const DenseMatrix& U, const DenseMatrix& X,
                               std::size_t k) {
  const std::size_t n = U.rows(), p = X.cols();
  if (U.cols() != n) throw DimensionError("construct_Z: U must be square");
  if (X.rows() != n) throw DimensionError("construct_Z: U and X disagree");
  if (k == 0 || k >= p) throw DimensionError("construct_Z: need 0 < k < p");
  if (p > n) throw DimensionError("construct_Z: need p <= n");
  if (orthonormality_defect(U) > 1e-8)
    throw NotOrthonormalError("construct_Z: U is not orthogonal");

  DenseMatrix C = matmul_At_B(U, X);
  DenseMatrix C2(p - k, p);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < p - k; ++i) C2(i, j) = C(k + i, j);

  // The right singular vectors of C2 span its row space; the completion of
  // that basis spans its nullspace, which has dimension >= k.
  SvdFactorization svd2 = svd_reference(C2);
  DenseMatrix Z = complete_basis(svd2.V);

  DenseMatrix residual = matmul(C2, Z);
  if (max_abs(residual) > 1e-9 * frobenius_norm(X))
    throw NumericalError("construct_Z: nullspace residual too large");
  return Z;
}

namespace detail {

// tan of the k-dimensional principal angle between range(U_k) and
// range(W), given an explicit orthonormal complement of U_k. Returns
// +infinity when range(W) has no k-dimensional overlap with range(U_k).
inline double tan_angle_with_complement(const DenseMatrix& U_k,
                                        const DenseMatrix& U_rest,
                                        const DenseMatrix& W) {
  const std::size_t n = U_k.rows(), k = U_k.cols();
  if (W.rows() != n || W.cols() != k)
    throw DimensionError("tan_angle_kdim: W must match U_k's shape");
  if (k == 0) throw DimensionError("tan_angle_kdim: k must be positive");
  if (U_rest.cols() == 0) return 0.0;

  DenseMatrix Qw = qr_thin(W).Q;
  DenseMatrix B = matmul_At_B(U_k, Qw);
  SvdFactorization svdB = svd_reference(B);
  if (svdB.sigma.back() <= 1e-12)
    return std::numeric_limits<double>::infinity();

  DenseMatrix Binv(k, k);
  {
    DenseMatrix Vs = svdB.V;
    for (std::size_t j = 0; j < k; ++j) {
      double* v = Vs.col(j);
      for (std::size_t i = 0; i < k; ++i) v[i] /= svdB.sigma[j];
    }
    Binv = matmul_A_Bt(Vs, svdB.U);
  }
  DenseMatrix A = matmul_At_B(U_rest, Qw);
  return spectral_norm(matmul(A, Binv));
}

}  // namespace detail

// tan of the k-dimensional principal angle between range(U_k) and
// range(W), measured as the spectral norm of (complement part) times
// (U_k part)^{-1} of an orthonormal basis of range(W).
inline double tan_angle_kdim(const DenseMatrix& U_k, const DenseMatrix& W) {
  if (U_k.cols() > U_k.rows())
    throw DimensionError("tan_angle_kdim: U_k has more columns than rows");
  if (orthonormality_defect(U_k) > 1e-8)
    throw NotOrthonormalError("tan_angle_kdim: U_k is not orthonormal");
  return detail::tan_angle_with_complement(U_k, complete_basis(U_k), W);
}

// Draw an n x p Gaussian start block, build Z against the leading-k block
// of U, and report the measured angle next to its high-probability bound
//   tan theta <= (sqrt(n-p) + sqrt(p) + alpha) / (sqrt(p) - sqrt(k) - alpha)
// which fails with probability at most 2 exp(-alpha^2 / 2).
inline InitializationReport initialize(const DenseMatrix& U, std::size_t p,
                                       std::size_t k, double alpha,
                                       std::uint64_t seed) {
  const std::size_t n = U.rows();
  if (U.cols() != n) throw DimensionError("initialize: U must be square");
  if (k == 0 || k >= p || p > n)
    throw DimensionError("initialize: need 0 < k < p <= n");
  if (orthonormality_defect(U) > 1e-8)
    throw NotOrthonormalError("initialize: U is not orthogonal");
  const double margin = std::sqrt(double(p)) - std::sqrt(double(k)) - alpha;
  if (alpha <= 0.0 || margin <= 0.0)
    throw InvalidAlphaError("initialize: need 0 < alpha < sqrt(p) - sqrt(k)");

  DenseMatrix X = gaussian_matrix(n, p, seed);
  DenseMatrix Z = construct_Z(U, X, k);
  DenseMatrix XZ = matmul(X, Z);

  InitializationReport rep;
  rep.tan_theta = detail::tan_angle_with_complement(
      col_slice(U, 0, k), col_slice(U, k, n), XZ);
  rep.nullspace_residual = max_abs(matmul_At_B(col_slice(U, k, p), XZ));
  rep.bound = (std::sqrt(double(n - p)) + std::sqrt(double(p)) + alpha) /
              margin;
  rep.alpha = alpha;
  rep.failure_probability = 2.0 * std::exp(-alpha * alpha / 2.0);
  rep.Z = std::move(Z);
  return rep;
}

}  // namespace rsvd
