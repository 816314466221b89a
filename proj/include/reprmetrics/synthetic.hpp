#pragma once

#include "reprmetrics/io.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

// Seeded synthetic matrices for verification, benchmarking, and tests.
namespace reprmetrics::synthetic {

Matrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed);

// rows x cols matrix with orthonormal columns (cols <= rows), from the QR
// factor of a Gaussian matrix.
Matrix orthonormal_columns(std::size_t rows, std::size_t cols, std::uint64_t seed);

// U diag(values) V^T with random orthonormal U and V; values.size() must not
// exceed min(rows, cols). The singular values are exactly `values` up to rounding.
Matrix with_singular_values(std::size_t rows, std::size_t cols, const std::vector<double>& values,
                            std::uint64_t seed);

// `head` values falling linearly from 2 toward 1, then `total - head` values
// starting at 0.1 and decaying geometrically, so values[head-1] / values[head] >= 10.
std::vector<double> separated_spectrum(std::size_t head, std::size_t total);

// Cheap stand-in for a separated spectrum at large sizes: a rank-`rank`
// Gaussian product with singular values near [1, 2] plus isotropic noise whose
// top singular value is about 0.01. Costs O(rows * cols * rank).
Matrix low_rank_plus_noise(std::size_t rows, std::size_t cols, std::size_t rank, std::uint64_t seed);

}  // namespace reprmetrics::synthetic
