#pragma once

#include "matrix.hpp"

namespace spadimo {

// Eigen-pairs of a symmetric matrix, eigenvalues sorted descending.
// retained_rank counts eigenvalues above rank_tolerance * lambda_max.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;  // dim x k, columns orthonormal
  int retained_rank = 0;

  int dim() const { return eigenvectors.rows(); }
  int count() const { return static_cast<int>(eigenvalues.size()); }
};

constexpr double kFullRankTolerance = 1e-10;
constexpr double kFatRankTolerance = 1e-6;  // eigenvalue noise floor of weighted covariances

// Cyclic Jacobi; converges when the off-diagonal Frobenius norm drops below
// 1e-12 * ||S||_F.
SpectralDecomposition sym_eigen(const SymmetricMatrix& s, double rank_tolerance);

// Spectral decomposition of A^T A computed through the n x n Gram matrix;
// intended for fat data where forming the p x p product is wasteful.
// Only eigen-pairs with positive, numerically meaningful eigenvalues are kept.
SpectralDecomposition spectral_from_rows(const Matrix& a, double rank_tolerance);

Vector solve_spd(const SymmetricMatrix& s, const Vector& b);

Matrix cholesky_lower(const SymmetricMatrix& s);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Inverse chi-squared CDF: q with P(df/2, q/2) = prob, Newton with bisection
// fallback, residual tolerance 1e-12.
double chi2_quantile(double prob, int df);

}  // namespace spadimo
