#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsvd/bounds.hpp"
#include "rsvd/errors.hpp"
#include "rsvd/linalg.hpp"
#include "rsvd/matrix.hpp"
#include "rsvd/random.hpp"
#include "rsvd/svd.hpp"

namespace rsvd {

// The block Krylov sketch K = [MX, (MM^T)MX, ..., (MM^T)^d MX] in
// stabilized form: blocks[j] spans range((MM^T)^j MX) and Q is an
// orthonormal basis of the joint range.
struct KrylovBasis {
  std::vector<DenseMatrix> blocks;
  DenseMatrix Q;
  std::size_t degree;           // d
  std::size_t block_size;       // p
  std::size_t dropped_columns;  // dependent directions removed
};

struct SketchResult {
  DenseMatrix Q_sketch;
  DenseMatrix approx_k;
  double spectral_err_sq;
  double frobenius_err_sq;
  std::size_t iterations_used;
};

// Simultaneous subspace iteration: an orthonormal basis of
// range((MM^T)^t M X), renormalized by thin QR after every single
// application of M or M^T so intermediates never overflow.
inline DenseMatrix power_iterate(const DenseMatrix& M, const DenseMatrix& X,
                                 std::size_t t) {
  if (X.rows() != M.cols())
    throw DimensionError("power_iterate: X must have cols(M) rows");
  DenseMatrix Q = qr_thin(matmul(M, X)).Q;
  for (std::size_t i = 0; i < t; ++i) {
    DenseMatrix Y = qr_thin(matmul_At_B(M, Q)).Q;
    Q = qr_thin(matmul(M, Y)).Q;
  }
  return Q;
}

// Build the degree-d block Krylov basis. Each raw block is orthogonalized
// against the accumulated basis column by column; a column whose residual
// drops to 1e-10 times the block's Frobenius norm is recorded as a
// dependent direction and dropped. The next block is always computed from
// an internally orthonormalized copy of the current raw block, so the
// chain survives even when a whole block is already contained in Q.
inline KrylovBasis build_krylov(const DenseMatrix& M, const DenseMatrix& X,
                                std::size_t d) {
  if (X.rows() != M.cols())
    throw DimensionError("build_krylov: X must have cols(M) rows");
  const std::size_t m = M.rows();

  KrylovBasis kb;
  kb.degree = d;
  kb.block_size = X.cols();
  kb.dropped_columns = 0;

  DenseMatrix B = matmul(M, X);
  if (frobenius_norm(B) == 0.0)
    throw EmptyBasisError("build_krylov: M*X vanished");

  std::vector<std::vector<double>> basis;  // columns of Q
  DenseMatrix W;                           // multiplication track
  for (std::size_t j = 0; j <= d; ++j) {
    if (j > 0) {
      B = matmul(M, matmul_At_B(M, W));
      if (!B.all_finite())
        throw OverflowError("build_krylov: block overflowed");
    }
    kb.blocks.push_back(B);
    const double block_norm = frobenius_norm(B);
    for (std::size_t c = 0; c < B.cols(); ++c) {
      // A full basis spans R^m, so the residual of anything is zero.
      if (basis.size() >= m) {
        ++kb.dropped_columns;
        continue;
      }
      std::vector<double> v(B.col(c), B.col(c) + m);
      for (int pass = 0; pass < 2; ++pass) {
        for (const std::vector<double>& q : basis) {
          double dot = 0.0;
          for (std::size_t i = 0; i < m; ++i) dot += q[i] * v[i];
          for (std::size_t i = 0; i < m; ++i) v[i] -= dot * q[i];
        }
      }
      double norm = 0.0;
      for (double t : v) norm += t * t;
      norm = std::sqrt(norm);
      if (norm <= 1e-10 * block_norm) {
        ++kb.dropped_columns;
        continue;
      }
      for (double& t : v) t /= norm;
      basis.push_back(std::move(v));
    }
    if (j < d) {
      W = orthonormalize_prune(B, 1e-12).Q;
      if (W.cols() == 0)
        throw EmptyBasisError("build_krylov: block " + std::to_string(j + 1) +
                              " vanished");
    }
  }

  DenseMatrix Q(m, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    std::copy(basis[j].begin(), basis[j].end(), Q.col(j));
  kb.Q = std::move(Q);
  return kb;
}

// Rank-k extraction from a sketch basis: approx = Q (Q^T M)_k together
// with both squared error norms.
inline SketchResult extract_rank_k(const DenseMatrix& M, const DenseMatrix& Q,
                                   std::size_t k) {
  SketchResult res;
  res.approx_k = rank_k_project_F(Q, M, k);
  DenseMatrix R = subtract(M, res.approx_k);
  const double s = spectral_norm(R);
  const double f = frobenius_norm(R);
  res.spectral_err_sq = s * s;
  res.frobenius_err_sq = f * f;
  res.Q_sketch = Q;
  res.iterations_used = 0;
  return res;
}

// End-to-end randomized truncated SVD: draw a Gaussian start block,
// sketch by the chosen method with the given budget, extract rank k.
inline SketchResult randomized_svd(const DenseMatrix& M, std::size_t k,
                                   std::size_t p, SketchMethod method,
                                   const IterationBudget& budget,
                                   std::uint64_t seed) {
  const std::size_t r = std::min(M.rows(), M.cols());
  if (k == 0 || k > p || p > r)
    throw DimensionError("randomized_svd: need 0 < k <= p <= min(m,n)");
  DenseMatrix X = gaussian_matrix(M.cols(), p, seed);
  DenseMatrix Q = (method == SketchMethod::power)
                      ? power_iterate(M, X, budget.count)
                      : build_krylov(M, X, budget.count).Q;
  SketchResult res = extract_rank_k(M, Q, k);
  res.iterations_used = budget.count;
  return res;
}

inline BoundVerdict verify(const SketchResult& result, double bound,
                           double slack) {
  return verify(result.spectral_err_sq, bound, slack);
}

}  // namespace rsvd
