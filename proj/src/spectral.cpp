#include "reprmetrics/spectral.hpp"

#include "reprmetrics/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <functional>
#include <random>
#include <string>

namespace reprmetrics {

namespace {

std::size_t check_k(std::size_t k, std::size_t limit, const char* what) {
  if (k == 0 || k > limit) {
    throw Error(ErrorCode::KOutOfRange, std::string(what) + ": k=" + std::to_string(k) +
                                            " outside [1, " + std::to_string(limit) + "]");
  }
  return k;
}

Matrix orthonormal_basis(const Matrix& y) {
  Eigen::HouseholderQR<Matrix> qr(y);
  return qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
}

std::vector<double> descending_values(const Vector& sv, std::size_t keep) {
  std::vector<double> values(sv.data(), sv.data() + sv.size());
  std::sort(values.begin(), values.end(), std::greater<>());
  values.resize(std::min(keep, values.size()));
  for (double& v : values) v = std::max(v, 0.0);
  return values;
}

}  // namespace

std::string_view to_string(SpectrumSource source) {
  return source == SpectrumSource::covariance ? "covariance" : "hidden_states";
}

std::string_view to_string(Backend backend) {
  return backend == Backend::exact ? "exact" : "randomized";
}

std::string to_string(Truncation k) { return k ? std::to_string(*k) : "full"; }

CovarianceMatrix covariance(const Matrix& h) {
  const double n = static_cast<double>(h.rows());
  Matrix gram = (h.transpose() * h) / n;
  Matrix sym = 0.5 * (gram + gram.transpose());
  return {std::move(sym), static_cast<std::size_t>(h.rows())};
}

CovarianceMatrix covariance(const NormalizedStates& s) { return covariance(s.data()); }

Spectrum exact_spectrum(const CovarianceMatrix& c) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(c.data, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure,
                "symmetric eigensolver did not converge on a " + std::to_string(c.data.rows()) +
                    "x" + std::to_string(c.data.cols()) + " covariance");
  }
  const Vector& ev = solver.eigenvalues();
  Spectrum out;
  out.values.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  for (double& v : out.values) {
    if (v < -kNegativeClamp) {
      throw Error(ErrorCode::InternalConsistency,
                  "covariance eigenvalue " + std::to_string(v) + " is below -1e-10");
    }
    v = std::max(v, 0.0);
  }
  out.source = SpectrumSource::covariance;
  out.backend = Backend::exact;
  out.k = out.values.size();
  out.total_dim = static_cast<std::size_t>(c.data.rows());
  return out;
}

Spectrum exact_singular_values(const Matrix& h, Truncation k) {
  const auto min_dim = static_cast<std::size_t>(std::min(h.rows(), h.cols()));
  const std::size_t keep = k ? check_k(*k, min_dim, "exact_singular_values") : min_dim;

  Eigen::BDCSVD<Matrix> svd(h);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "bidiagonal SVD did not converge on a " +
                                                   std::to_string(h.rows()) + "x" +
                                                   std::to_string(h.cols()) + " matrix");
  }
  Spectrum out;
  out.values = descending_values(svd.singularValues(), keep);
  out.source = SpectrumSource::hidden_states;
  out.backend = Backend::exact;
  out.k = out.values.size();
  out.total_dim = min_dim;
  return out;
}

Spectrum randomized_singular_values(const Matrix& h, std::size_t k, const RandomizedOptions& opts) {
  const auto min_dim = static_cast<std::size_t>(std::min(h.rows(), h.cols()));
  if (k == 0 || k + opts.oversample > min_dim) {
    throw Error(ErrorCode::KOutOfRange, "randomized_spectrum: k=" + std::to_string(k) +
                                            " with oversample=" + std::to_string(opts.oversample) +
                                            " exceeds min(n,d)=" + std::to_string(min_dim));
  }
  const auto width = static_cast<Eigen::Index>(k + opts.oversample);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix omega(h.cols(), width);
  for (Eigen::Index j = 0; j < omega.cols(); ++j) {
    for (Eigen::Index i = 0; i < omega.rows(); ++i) omega(i, j) = gauss(rng);
  }

  Matrix q = orthonormal_basis(h * omega);
  for (std::size_t it = 0; it < opts.power_iters; ++it) {
    const Matrix z = orthonormal_basis(h.transpose() * q);
    q = orthonormal_basis(h * z);
  }
  const Matrix b = q.transpose() * h;

  Eigen::BDCSVD<Matrix> svd(b);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "SVD of the projected sketch did not converge");
  }
  Spectrum out;
  out.values = descending_values(svd.singularValues(), k);
  out.source = SpectrumSource::hidden_states;
  out.backend = Backend::randomized;
  out.k = out.values.size();
  out.total_dim = min_dim;
  return out;
}

Spectrum randomized_spectrum(const NormalizedStates& s, std::size_t k, const RandomizedOptions& opts) {
  return randomized_singular_values(s.data(), k, opts);
}

Spectrum hidden_spectrum(const NormalizedStates& s, Truncation k, Backend backend,
                         const RandomizedOptions& opts) {
  if (!k || backend == Backend::exact) return exact_singular_values(s.data(), k);

  const std::size_t min_dim = std::min(s.rows(), s.cols());
  check_k(*k, min_dim, "hidden_spectrum");
  RandomizedOptions fitted = opts;
  fitted.oversample = std::min(opts.oversample, min_dim - *k);
  return randomized_singular_values(s.data(), *k, fitted);
}

Spectrum covariance_spectrum_from_hidden(const Spectrum& hidden, std::size_t n_tokens,
                                         std::size_t d) {
  Spectrum out;
  out.values.reserve(hidden.values.size());
  const double n = static_cast<double>(n_tokens);
  for (double sv : hidden.values) out.values.push_back(sv * sv / n);
  out.source = SpectrumSource::covariance;
  out.backend = hidden.backend;
  out.k = out.values.size();
  out.total_dim = d;
  return out;
}

}  // namespace reprmetrics
