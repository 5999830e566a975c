#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rsvd/errors.hpp"
#include "rsvd/matrix.hpp"

namespace rsvd {

inline double frobenius_norm(const DenseMatrix& A) {
  double s = 0.0;
  for (double v : A.data()) s += v * v;
  return std::sqrt(s);
}

inline double max_abs(const DenseMatrix& A) {
  double m = 0.0;
  for (double v : A.data()) m = std::max(m, std::abs(v));
  return m;
}

// C = A * B
inline DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.cols() != B.rows())
    throw DimensionError("matmul: inner dimensions disagree");
  DenseMatrix C(A.rows(), B.cols());
  const std::size_t m = A.rows(), kk = A.cols(), n = B.cols();
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = C.col(j);
    for (std::size_t l = 0; l < kk; ++l) {
      const double b = B(l, j);
      if (b == 0.0) continue;
      const double* al = A.col(l);
      for (std::size_t i = 0; i < m; ++i) cj[i] += b * al[i];
    }
  }
  return C;
}

// C = A^T * B
inline DenseMatrix matmul_At_B(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.rows() != B.rows())
    throw DimensionError("matmul_At_B: row counts disagree");
  DenseMatrix C(A.cols(), B.cols());
  const std::size_t m = A.rows();
  for (std::size_t j = 0; j < B.cols(); ++j) {
    const double* bj = B.col(j);
    for (std::size_t i = 0; i < A.cols(); ++i) {
      const double* ai = A.col(i);
      double s = 0.0;
      for (std::size_t l = 0; l < m; ++l) s += ai[l] * bj[l];
      C(i, j) = s;
    }
  }
  return C;
}

// C = A * B^T
inline DenseMatrix matmul_A_Bt(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.cols() != B.cols())
    throw DimensionError("matmul_A_Bt: column counts disagree");
  DenseMatrix C(A.rows(), B.rows());
  const std::size_t m = A.rows(), kk = A.cols();
  for (std::size_t l = 0; l < kk; ++l) {
    const double* al = A.col(l);
    for (std::size_t j = 0; j < B.rows(); ++j) {
      const double b = B(j, l);
      if (b == 0.0) continue;
      double* cj = C.col(j);
      for (std::size_t i = 0; i < m; ++i) cj[i] += b * al[i];
    }
  }
  return C;
}

inline DenseMatrix transpose(const DenseMatrix& A) {
  DenseMatrix T(A.cols(), A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) T(j, i) = A(i, j);
  return T;
}

inline DenseMatrix subtract(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionError("subtract: shapes disagree");
  DenseMatrix C = A;
  for (std::size_t i = 0; i < C.data().size(); ++i) C.data()[i] -= B.data()[i];
  return C;
}

inline DenseMatrix add(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionError("add: shapes disagree");
  DenseMatrix C = A;
  for (std::size_t i = 0; i < C.data().size(); ++i) C.data()[i] += B.data()[i];
  return C;
}

inline DenseMatrix scale(const DenseMatrix& A, double s) {
  DenseMatrix C = A;
  for (double& v : C.data()) v *= s;
  return C;
}

// Copy of columns [j0, j1) of A.
inline DenseMatrix col_slice(const DenseMatrix& A, std::size_t j0,
                             std::size_t j1) {
  if (j0 > j1 || j1 > A.cols()) throw DimensionError("col_slice: bad range");
  DenseMatrix C(A.rows(), j1 - j0);
  for (std::size_t j = j0; j < j1; ++j)
    std::copy(A.col(j), A.col(j) + A.rows(), C.col(j - j0));
  return C;
}

inline DenseMatrix hstack(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.empty()) return B;
  if (B.empty()) return A;
  if (A.rows() != B.rows()) throw DimensionError("hstack: row counts disagree");
  DenseMatrix C(A.rows(), A.cols() + B.cols());
  std::copy(A.data().begin(), A.data().end(), C.data().begin());
  std::copy(B.data().begin(), B.data().end(),
            C.data().begin() + static_cast<std::ptrdiff_t>(A.data().size()));
  return C;
}

// Largest deviation of Q^T Q from the identity; the cheap orthonormality
// check used by preconditions.
inline double orthonormality_defect(const DenseMatrix& Q) {
  DenseMatrix G = matmul_At_B(Q, Q);
  double m = 0.0;
  for (std::size_t j = 0; j < G.cols(); ++j)
    for (std::size_t i = 0; i < G.rows(); ++i)
      m = std::max(m, std::abs(G(i, j) - (i == j ? 1.0 : 0.0)));
  return m;
}

struct QrFactorization {
  DenseMatrix Q;  // m x n, orthonormal columns
  DenseMatrix R;  // n x n, upper triangular, nonnegative diagonal
};

// Thin Householder QR of an m x n matrix with m >= n. Deterministic; the
// factorization is sign-normalized so that diag(R) >= 0, which makes Q
// unique when A has full column rank. Throws RankDeficientError when some
// |R(j,j)| <= 1e-12 * ||A||_F.
inline QrFactorization qr_thin(const DenseMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  if (m < n) throw DimensionError("qr_thin: requires rows >= cols");
  if (n == 0) throw DimensionError("qr_thin: empty matrix");
  const double fro = frobenius_norm(A);

  DenseMatrix W = A;                       // transformed copy; R on top
  std::vector<std::vector<double>> vs(n);  // Householder vectors
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(m - j);
    double normx = 0.0;
    for (std::size_t i = j; i < m; ++i) {
      v[i - j] = W(i, j);
      normx += W(i, j) * W(i, j);
    }
    normx = std::sqrt(normx);
    double vnorm2 = 0.0;
    if (normx > 0.0) {
      const double s = (v[0] >= 0.0) ? 1.0 : -1.0;
      v[0] += s * normx;
      for (double t : v) vnorm2 += t * t;
      // Apply H = I - 2 v v^T / (v^T v) to the trailing panel.
      for (std::size_t c = j; c < n; ++c) {
        double dot = 0.0;
        for (std::size_t i = j; i < m; ++i) dot += v[i - j] * W(i, c);
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = j; i < m; ++i) W(i, c) -= f * v[i - j];
      }
    }
    vs[j] = std::move(v);
  }

  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(W(j, j)) <= 1e-12 * fro)
      throw RankDeficientError("qr_thin: column rank below " +
                               std::to_string(n));

  // Accumulate the thin Q by applying the reflectors to the first n
  // columns of the identity, last reflector first.
  DenseMatrix Q(m, n);
  for (std::size_t j = 0; j < n; ++j) Q(j, j) = 1.0;
  for (std::size_t j = n; j-- > 0;) {
    const std::vector<double>& v = vs[j];
    double vnorm2 = 0.0;
    for (double t : v) vnorm2 += t * t;
    if (vnorm2 == 0.0) continue;
    for (std::size_t c = 0; c < n; ++c) {
      double dot = 0.0;
      for (std::size_t i = j; i < m; ++i) dot += v[i - j] * Q(i, c);
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = j; i < m; ++i) Q(i, c) -= f * v[i - j];
    }
  }

  DenseMatrix R(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) R(i, j) = W(i, j);
  for (std::size_t j = 0; j < n; ++j) {
    if (R(j, j) < 0.0) {
      for (std::size_t c = j; c < n; ++c) R(j, c) = -R(j, c);
      for (std::size_t i = 0; i < m; ++i) Q(i, j) = -Q(i, j);
    }
  }
  return {std::move(Q), std::move(R)};
}

struct PrunedBasis {
  DenseMatrix Q;                // orthonormal columns spanning range(A)
  std::size_t dropped;          // columns removed as dependent
  std::vector<std::size_t> kept;  // original indices of surviving columns
};

// Orthonormalize the columns of A left to right with two Gram-Schmidt
// passes, dropping any column whose residual falls to or below
// rel_drop_tol times its own input norm. Unlike qr_thin this never
// throws on rank deficiency; it reports it.
inline PrunedBasis orthonormalize_prune(const DenseMatrix& A,
                                        double rel_drop_tol = 1e-10) {
  const std::size_t m = A.rows();
  PrunedBasis out{DenseMatrix(m, 0), 0, {}};
  std::vector<std::vector<double>> basis;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    std::vector<double> v(A.col(j), A.col(j) + m);
    double norm0 = 0.0;
    for (double t : v) norm0 += t * t;
    norm0 = std::sqrt(norm0);
    for (int pass = 0; pass < 2; ++pass) {
      for (const std::vector<double>& q : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += q[i] * v[i];
        for (std::size_t i = 0; i < m; ++i) v[i] -= dot * q[i];
      }
    }
    double norm1 = 0.0;
    for (double t : v) norm1 += t * t;
    norm1 = std::sqrt(norm1);
    if (norm0 == 0.0 || norm1 <= rel_drop_tol * norm0) {
      ++out.dropped;
      continue;
    }
    for (double& t : v) t /= norm1;
    basis.push_back(std::move(v));
    out.kept.push_back(j);
  }
  DenseMatrix Q(m, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    std::copy(basis[j].begin(), basis[j].end(), Q.col(j));
  out.Q = std::move(Q);
  return out;
}

// Extend an n x r matrix with orthonormal columns to a full orthonormal
// basis of R^n, returning the n x (n-r) complement. Deterministic:
// coordinate vectors are tried in index order and accepted greedily.
inline DenseMatrix complete_basis(const DenseMatrix& Q) {
  const std::size_t n = Q.rows(), r = Q.cols();
  if (r > n) throw DimensionError("complete_basis: more columns than rows");
  std::vector<std::vector<double>> basis;
  basis.reserve(n);
  for (std::size_t j = 0; j < r; ++j)
    basis.emplace_back(Q.col(j), Q.col(j) + n);
  std::size_t accepted = 0;
  DenseMatrix C(n, n - r);
  for (std::size_t cand = 0; cand < n && accepted < n - r; ++cand) {
    std::vector<double> v(n, 0.0);
    v[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const std::vector<double>& q : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
      }
    }
    double norm = 0.0;
    for (double t : v) norm += t * t;
    norm = std::sqrt(norm);
    if (norm <= 1e-6) continue;
    for (double& t : v) t /= norm;
    std::copy(v.begin(), v.end(), C.col(accepted));
    basis.push_back(std::move(v));
    ++accepted;
  }
  if (accepted != n - r)
    throw NumericalError("complete_basis: could not complete the basis");
  return C;
}

// Orthogonal projection of each column of M onto range(C): returns
// C C^+ M without forming the pseudoinverse. Rank-deficient C is allowed;
// dependent columns are pruned first.
inline DenseMatrix project_onto_range(const DenseMatrix& C,
                                      const DenseMatrix& M) {
  if (C.rows() != M.rows())
    throw DimensionError("project_onto_range: row counts disagree");
  if (C.cols() == 0) return DenseMatrix(M.rows(), M.cols());
  PrunedBasis basis = orthonormalize_prune(C, 1e-12);
  // range(0) = {0}, so the projection of anything onto it is zero.
  if (basis.Q.cols() == 0) return DenseMatrix(M.rows(), M.cols());
  return matmul(basis.Q, matmul_At_B(basis.Q, M));
}

}  // namespace rsvd
