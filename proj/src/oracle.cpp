#include "reprmetrics/oracle.hpp"

#include "reprmetrics/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace reprmetrics::oracle {

namespace {

double off_diagonal_norm(const std::vector<std::vector<double>>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j) s += a[i][j] * a[i][j];
    }
  }
  return std::sqrt(s);
}

}  // namespace

OracleResult jacobi_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSymmetric, "matrix is " + std::to_string(m.rows()) + "x" +
                                             std::to_string(m.cols()));
  }
  const auto n = static_cast<std::size_t>(m.rows());
  if (n > kMaxDimension) {
    throw Error(ErrorCode::DimensionTooLarge,
                "oracle is capped at " + std::to_string(kMaxDimension) + ", got " + std::to_string(n));
  }

  // Plain nested vectors: deliberately nothing from the Eigen solvers.
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  double fro = 0.0;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      fro += a[i][j] * a[i][j];
      max_abs = std::max(max_abs, std::abs(a[i][j]));
    }
  }
  fro = std::sqrt(fro);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a[i][j] - a[j][i]) > 1e-12 * std::max(1.0, max_abs)) {
        throw Error(ErrorCode::NotSymmetric, "entries (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") differ from their transpose");
      }
    }
  }

  OracleResult result;
  const double target = 1e-12 * fro;
  double off = off_diagonal_norm(a);
  while (off >= target && off > 0.0) {
    if (result.sweeps == kMaxSweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi did not converge in " +
                                                std::to_string(kMaxSweeps) + " sweeps");
    }
    ++result.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        // Rotation angle that zeroes a[p][q] (Rutishauser's stable form).
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        ++result.iterations;
      }
    }
    off = off_diagonal_norm(a);
  }

  result.off_diagonal_residual = off;
  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a[i][i];
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
  return result;
}

std::vector<double> naive_singular_values(const Matrix& m) {
  const Matrix gram = m.rows() >= m.cols() ? Matrix(m.transpose() * m) : Matrix(m * m.transpose());
  // Exact symmetrization so the NotSymmetric check only sees real asymmetry.
  const Matrix sym = 0.5 * (gram + gram.transpose());
  std::vector<double> values = jacobi_eigenvalues(sym).eigenvalues;
  for (double& v : values) v = std::sqrt(std::max(v, 0.0));
  return values;
}

double direct_entropy(const std::vector<double>& values) {
  long double total = 0.0L;
  for (double v : values) total += static_cast<long double>(v);
  if (!(total > 0.0L)) {
    throw Error(ErrorCode::AllZeroSpectrum, "oracle entropy of an all-zero spectrum");
  }
  long double h = 0.0L;
  for (double v : values) {
    if (v <= 0.0) continue;
    const long double p = static_cast<long double>(v) / total;
    h -= p * std::log(p);
  }
  return static_cast<double>(h);
}

}  // namespace reprmetrics::oracle
