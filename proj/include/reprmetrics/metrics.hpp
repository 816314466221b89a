#pragma once

#include "reprmetrics/spectral.hpp"

#include <string>

namespace reprmetrics {

enum class LogBase { nats, bits };

std::string_view to_string(LogBase base);

// Spectrum values below this fraction of the largest one count as exact zeros
// under the 0 * log 0 = 0 convention.
inline constexpr double kZeroSpectrumRatio = 1e-14;

double spectral_entropy(const Spectrum& sp, LogBase base = LogBase::nats);

// exp of the natural-log entropy; equals k for a uniform spectrum of k values.
double effective_rank(const Spectrum& sp);

double nuclear_norm(const Spectrum& sp);

struct MetricConfig {
  Truncation k = kFullSpectrum;
  LogBase base = LogBase::nats;
  Backend backend = Backend::exact;
  RandomizedOptions randomized{};

  friend bool operator==(const MetricConfig& a, const MetricConfig& b) {
    return a.k == b.k && a.base == b.base && a.backend == b.backend &&
           a.randomized.oversample == b.randomized.oversample &&
           a.randomized.power_iters == b.randomized.power_iters &&
           a.randomized.seed == b.randomized.seed;
  }
};

struct MetricBundle {
  double entropy_nats = 0.0;
  double entropy_bits = 0.0;
  double effective_rank = 1.0;
  // Nuclear norm of the normalized hidden-state matrix. Used for scoring.
  double mnn_hidden = 0.0;
  // Nuclear norm of the covariance. With unit rows and the full spectrum
  // this is trace(Sigma) = 1 for every input, so it carries no signal.
  double mnn_covariance = 0.0;
  std::size_t k_used = 0;
  std::string label;

  std::size_t n_tokens = 0;
  std::size_t hidden_dim = 0;
  MetricConfig config{};

  // Entropy in the unit selected by config.base.
  double entropy() const noexcept {
    return config.base == LogBase::bits ? entropy_bits : entropy_nats;
  }
};

// Covariance spectrum and hidden-state spectrum of `s`, then every metric.
// The exact backend decomposes both matrices; the randomized backend computes
// a truncated hidden-state spectrum and derives the covariance spectrum from
// it, never forming the d x d covariance.
MetricBundle bundle(const NormalizedStates& s, const MetricConfig& cfg = {});

}  // namespace reprmetrics
