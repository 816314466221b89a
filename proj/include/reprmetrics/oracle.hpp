#pragma once

#include "reprmetrics/io.hpp"

#include <cstddef>
#include <vector>

// Slow reference implementations. They share no code with the spectral or
// metrics paths and exist so those paths can be checked independently.
namespace reprmetrics::oracle {

inline constexpr std::size_t kMaxDimension = 256;
inline constexpr std::size_t kMaxSweeps = 100;

struct OracleResult {
  std::vector<double> eigenvalues;  // descending
  std::size_t iterations = 0;       // Jacobi rotations actually applied
  std::size_t sweeps = 0;
  double off_diagonal_residual = 0.0;  // Frobenius norm of the off-diagonal part at exit
};

// Cyclic Jacobi on a symmetric matrix, sweeping until the off-diagonal mass is
// below 1e-12 * ||A||_F. Throws NotSymmetric, NoConvergence (over kMaxSweeps),
// or DimensionTooLarge.
OracleResult jacobi_eigenvalues(const Matrix& a);

// Square roots of the Jacobi eigenvalues of the smaller Gram matrix (M^T M or
// M M^T), clamped at zero; min(n, d) values, descending.
std::vector<double> naive_singular_values(const Matrix& m);

// Two-pass -sum p log p in long double with p = v / sum(v). Exact zeros are
// skipped. Throws AllZeroSpectrum.
double direct_entropy(const std::vector<double>& values);

}  // namespace reprmetrics::oracle
