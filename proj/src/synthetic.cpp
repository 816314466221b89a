#include "reprmetrics/synthetic.hpp"

#include "reprmetrics/error.hpp"

#include <cmath>
#include <random>

namespace reprmetrics::synthetic {

Matrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = gauss(rng);
  }
  return m;
}

Matrix orthonormal_columns(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (cols > rows) throw Error(ErrorCode::InvalidArgument, "orthonormal_columns needs cols <= rows");
  Eigen::HouseholderQR<Matrix> qr(gaussian(rows, cols, seed));
  return qr.householderQ() * Matrix::Identity(static_cast<Eigen::Index>(rows),
                                              static_cast<Eigen::Index>(cols));
}

Matrix with_singular_values(std::size_t rows, std::size_t cols, const std::vector<double>& values,
                            std::uint64_t seed) {
  const std::size_t r = values.size();
  if (r == 0 || r > std::min(rows, cols)) {
    throw Error(ErrorCode::InvalidArgument, "with_singular_values: bad spectrum length");
  }
  const Matrix u = orthonormal_columns(rows, r, seed);
  const Matrix v = orthonormal_columns(cols, r, seed ^ 0x9e3779b97f4a7c15ULL);
  const Eigen::Map<const Vector> s(values.data(), static_cast<Eigen::Index>(r));
  return u * s.asDiagonal() * v.transpose();
}

std::vector<double> separated_spectrum(std::size_t head, std::size_t total) {
  std::vector<double> values;
  values.reserve(total);
  for (std::size_t i = 0; i < head; ++i) {
    values.push_back(2.0 - static_cast<double>(i) / static_cast<double>(head));
  }
  double tail = 0.1;
  for (std::size_t i = head; i < total; ++i) {
    values.push_back(tail);
    tail *= 0.99;
  }
  return values;
}

Matrix low_rank_plus_noise(std::size_t rows, std::size_t cols, std::size_t rank, std::uint64_t seed) {
  const double sr = std::sqrt(static_cast<double>(rows));
  const double sc = std::sqrt(static_cast<double>(cols));
  Vector scale(static_cast<Eigen::Index>(rank));
  for (Eigen::Index i = 0; i < scale.size(); ++i) {
    scale(i) = 2.0 - static_cast<double>(i) / static_cast<double>(rank);
  }
  const Matrix left = gaussian(rows, rank, seed) / sr;
  const Matrix right = gaussian(cols, rank, seed + 1) / sc;
  Matrix m = left * scale.asDiagonal() * right.transpose();
  m += (0.01 / (sr + sc)) * gaussian(rows, cols, seed + 2);
  return m;
}

}  // namespace reprmetrics::synthetic
