#pragma once

#include "reprmetrics/normalization.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reprmetrics {

enum class SpectrumSource { covariance, hidden_states };
enum class Backend { exact, randomized };

// Eigenvalues in [-kNegativeClamp, 0) are rounding and clamp to zero; anything
// more negative is reported as InternalConsistency.
inline constexpr double kNegativeClamp = 1e-10;

// Number of leading singular values to keep; std::nullopt keeps all of them.
using Truncation = std::optional<std::size_t>;
inline constexpr Truncation kFullSpectrum = std::nullopt;

std::string_view to_string(SpectrumSource source);
std::string_view to_string(Backend backend);
// "full" or the decimal k.
std::string to_string(Truncation k);

struct CovarianceMatrix {
  Matrix data;             // d x d, symmetric
  std::size_t n_tokens{};  // the n in the 1/n scaling
};

struct Spectrum {
  std::vector<double> values;  // descending, all >= 0
  SpectrumSource source = SpectrumSource::covariance;
  Backend backend = Backend::exact;
  std::size_t k = 0;          // == values.size()
  std::size_t total_dim = 0;  // d for covariance spectra, min(n, d) for hidden-state spectra
};

struct RandomizedOptions {
  std::size_t oversample = 10;
  std::size_t power_iters = 2;
  std::uint64_t seed = 42;
};

// (1/n) H^T H, symmetrized as (A + A^T) / 2.
CovarianceMatrix covariance(const NormalizedStates& s);
CovarianceMatrix covariance(const Matrix& h);

// All d eigenvalues of the symmetric PSD covariance (equal to its singular
// values), via Householder tridiagonalization + implicit symmetric QR.
Spectrum exact_spectrum(const CovarianceMatrix& c);

// Singular values of an arbitrary dense matrix through divide-and-conquer
// bidiagonal SVD, optionally truncated to the leading k.
Spectrum exact_singular_values(const Matrix& h, Truncation k = kFullSpectrum);

// Top-k singular values by randomized subspace iteration:
//   Y = H * Omega (Omega is d x (k + oversample), seeded Gaussian),
//   `power_iters` rounds of re-orthonormalized multiplication by H^T and H,
//   then the exact SVD of the small projection Q^T H.
// Requires 1 <= k and k + oversample <= min(n, d).
Spectrum randomized_singular_values(const Matrix& h, std::size_t k,
                                    const RandomizedOptions& opts = {});

Spectrum randomized_spectrum(const NormalizedStates& s, std::size_t k,
                             const RandomizedOptions& opts = {});

// Singular values of the normalized hidden-state matrix itself. A full
// truncation always uses the exact backend; with Backend::randomized and a
// numeric k the randomized backend runs with the oversample shrunk to fit
// min(n, d).
Spectrum hidden_spectrum(const NormalizedStates& s, Truncation k,
                         Backend backend = Backend::exact, const RandomizedOptions& opts = {});

// sigma_i(Sigma) = sigma_i(H)^2 / n: the covariance spectrum implied by a
// hidden-state spectrum without forming Sigma.
Spectrum covariance_spectrum_from_hidden(const Spectrum& hidden, std::size_t n_tokens,
                                         std::size_t d);

}  // namespace reprmetrics
