#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "rsvd/errors.hpp"
#include "rsvd/linalg.hpp"
#include "rsvd/matrix.hpp"

namespace rsvd {

struct SvdFactorization {
  DenseMatrix U;              // m x r, orthonormal columns
  std::vector<double> sigma;  // r values, descending, nonnegative
  DenseMatrix V;              // n x r, orthonormal columns

  std::size_t rank(double rel_tol = 1e-12) const {
    if (sigma.empty() || sigma[0] <= 0.0) return 0;
    std::size_t r = 0;
    while (r < sigma.size() && sigma[r] > rel_tol * sigma[0]) ++r;
    return r;
  }
};

namespace detail {

// One-sided Jacobi on the columns of W (rows >= cols assumed by callers
// for efficiency, not required). Rotations are applied until every column
// pair (p,q) satisfies |w_p.w_q| <= 1e-13 * ||w_p|| * ||w_q||, which keeps
// the off-diagonal of the Gram matrix below 1e-12 * ||W||_F^2 in Frobenius
// norm. V, when given, accumulates the right rotations. Throws
// NoConvergenceError after 60 sweeps.
inline void one_sided_jacobi(DenseMatrix& W, DenseMatrix* V) {
  const std::size_t m = W.rows(), n = W.cols();
  constexpr double kPairTol = 1e-13;
  constexpr int kMaxSweeps = 60;

  std::vector<double> colsq(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    // Refresh the column norms each sweep (the incremental updates drift)
    // and treat columns at roundoff scale as exact zeros: rotating noise
    // columns against each other never meets a norm-relative tolerance.
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double* w = W.col(j);
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += w[i] * w[i];
      colsq[j] = s;
      scale = std::max(scale, s);
    }
    const double floor2 = scale * 1e-30;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double a = colsq[p], b = colsq[q];
        if (a <= floor2 || b <= floor2) continue;
        double* wp = W.col(p);
        double* wq = W.col(q);
        double c = 0.0;
        for (std::size_t i = 0; i < m; ++i) c += wp[i] * wq[i];
        if (std::abs(c) <= kPairTol * std::sqrt(a) * std::sqrt(b)) continue;

        const double zeta = (b - a) / (2.0 * c);
        const double t =
            ((zeta >= 0.0) ? 1.0 : -1.0) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = wp[i], y = wq[i];
          wp[i] = cs * x - sn * y;
          wq[i] = sn * x + cs * y;
        }
        colsq[p] = cs * cs * a - 2.0 * cs * sn * c + sn * sn * b;
        colsq[q] = sn * sn * a + 2.0 * cs * sn * c + cs * cs * b;
        if (V) {
          double* vp = V->col(p);
          double* vq = V->col(q);
          const std::size_t nv = V->rows();
          for (std::size_t i = 0; i < nv; ++i) {
            const double x = vp[i], y = vq[i];
            vp[i] = cs * x - sn * y;
            vq[i] = sn * x + cs * y;
          }
        }
        rotated = true;
      }
    }
    if (!rotated) return;
  }
  throw NoConvergenceError("one_sided_jacobi: not converged in 60 sweeps");
}

}  // namespace detail

// Reference SVD via one-sided Jacobi: A = U diag(sigma) V^T with
// r = min(rows, cols) columns in U and V and sigma sorted descending.
// Deterministic, including the sign convention: in every column of U the
// entry of largest magnitude (first such index on ties) is nonnegative.
inline SvdFactorization svd_reference(const DenseMatrix& A) {
  if (A.empty()) throw DimensionError("svd_reference: empty matrix");
  if (!A.all_finite())
    throw InvalidParamError("svd_reference: non-finite entries");

  const bool transposed = A.rows() < A.cols();
  DenseMatrix W = transposed ? transpose(A) : A;
  const std::size_t m = W.rows(), n = W.cols();
  DenseMatrix V = DenseMatrix::identity(n);
  detail::one_sided_jacobi(W, &V);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* w = W.col(j);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += w[i] * w[i];
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&sigma](std::size_t i, std::size_t j) {
                     return sigma[i] > sigma[j];
                   });

  DenseMatrix U(m, n);
  DenseMatrix Vs(n, n);
  std::vector<double> sig(n);
  std::vector<std::size_t> zero_cols;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = perm[j];
    sig[j] = sigma[src];
    std::copy(V.col(src), V.col(src) + n, Vs.col(j));
    if (sigma[src] > 0.0) {
      const double inv = 1.0 / sigma[src];
      const double* w = W.col(src);
      double* u = U.col(j);
      for (std::size_t i = 0; i < m; ++i) u[i] = w[i] * inv;
    } else {
      zero_cols.push_back(j);
    }
  }
  if (!zero_cols.empty()) {
    DenseMatrix nonzero(m, n - zero_cols.size());
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (sig[j] > 0.0) std::copy(U.col(j), U.col(j) + m, nonzero.col(c++));
    }
    DenseMatrix extra = complete_basis(nonzero);
    for (std::size_t z = 0; z < zero_cols.size(); ++z)
      std::copy(extra.col(z), extra.col(z) + m, U.col(zero_cols[z]));
  }

  SvdFactorization out;
  if (transposed) {
    out.U = std::move(Vs);
    out.V = std::move(U);
  } else {
    out.U = std::move(U);
    out.V = std::move(Vs);
  }
  out.sigma = std::move(sig);

  for (std::size_t j = 0; j < out.U.cols(); ++j) {
    double* u = out.U.col(j);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < out.U.rows(); ++i)
      if (std::abs(u[i]) > std::abs(u[imax])) imax = i;
    if (u[imax] < 0.0) {
      for (std::size_t i = 0; i < out.U.rows(); ++i) u[i] = -u[i];
      double* v = out.V.col(j);
      for (std::size_t i = 0; i < out.V.rows(); ++i) v[i] = -v[i];
    }
  }
  return out;
}

// Largest singular value. Runs the Jacobi kernel without accumulating
// vectors, so it is roughly twice as fast as a full svd_reference.
inline double spectral_norm(const DenseMatrix& A) {
  if (A.empty()) throw DimensionError("spectral_norm: empty matrix");
  if (!A.all_finite())
    throw InvalidParamError("spectral_norm: non-finite entries");
  DenseMatrix W = (A.rows() < A.cols()) ? transpose(A) : A;
  detail::one_sided_jacobi(W, nullptr);
  double best = 0.0;
  for (std::size_t j = 0; j < W.cols(); ++j) {
    const double* w = W.col(j);
    double s = 0.0;
    for (std::size_t i = 0; i < W.rows(); ++i) s += w[i] * w[i];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

// Best rank-k approximation M_k = U_k diag(sigma_k) V_k^T assembled from
// an existing factorization. k = 0 gives the zero matrix.
inline DenseMatrix truncate(const SvdFactorization& svd, std::size_t k) {
  if (k > svd.sigma.size())
    throw DimensionError("truncate: k exceeds the factorization rank");
  const std::size_t m = svd.U.rows(), n = svd.V.rows();
  if (k == 0) return DenseMatrix(m, n);
  DenseMatrix Us(m, k);
  for (std::size_t j = 0; j < k; ++j) {
    const double* u = svd.U.col(j);
    double* d = Us.col(j);
    for (std::size_t i = 0; i < m; ++i) d[i] = u[i] * svd.sigma[j];
  }
  return matmul_A_Bt(Us, col_slice(svd.V, 0, k));
}

// Q (Q^T M)_k: the best Frobenius-norm rank-k approximation of M whose
// columns live in range(Q). Q must have orthonormal columns.
inline DenseMatrix rank_k_project_F(const DenseMatrix& Q, const DenseMatrix& M,
                                    std::size_t k) {
  if (Q.rows() != M.rows())
    throw DimensionError("rank_k_project_F: row counts disagree");
  if (k > Q.cols())
    throw DimensionError("rank_k_project_F: k exceeds cols(Q)");
  if (orthonormality_defect(Q) > 1e-8)
    throw NotOrthonormalError("rank_k_project_F: Q is not orthonormal");
  if (k == 0) return DenseMatrix(M.rows(), M.cols());
  DenseMatrix B = matmul_At_B(Q, M);
  const std::size_t kk = std::min(k, std::min(B.rows(), B.cols()));
  return matmul(Q, truncate(svd_reference(B), kk));
}

// Moore-Penrose pseudoinverse via the reference SVD. Singular values at or
// below rel_tol * sigma_max are treated as zero.
inline DenseMatrix pseudo_inverse(const DenseMatrix& A,
                                  double rel_tol = 1e-12) {
  SvdFactorization svd = svd_reference(A);
  const double cut = svd.sigma.empty() ? 0.0 : rel_tol * svd.sigma[0];
  DenseMatrix Vs(svd.V.rows(), svd.V.cols());
  for (std::size_t j = 0; j < svd.V.cols(); ++j) {
    const double inv = (svd.sigma[j] > cut) ? 1.0 / svd.sigma[j] : 0.0;
    const double* v = svd.V.col(j);
    double* d = Vs.col(j);
    for (std::size_t i = 0; i < svd.V.rows(); ++i) d[i] = v[i] * inv;
  }
  return matmul_A_Bt(Vs, svd.U);
}

}  // namespace rsvd
