#include "reprmetrics/metrics.hpp"

#include "reprmetrics/error.hpp"

#include <cmath>
#include <numbers>

namespace reprmetrics {

std::string_view to_string(LogBase base) { return base == LogBase::nats ? "nats" : "bits"; }

double spectral_entropy(const Spectrum& sp, LogBase base) {
  double total = 0.0;
  double largest = 0.0;
  for (double v : sp.values) {
    total += v;
    largest = std::max(largest, v);
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::AllZeroSpectrum, "spectrum of length " +
                                                std::to_string(sp.values.size()) +
                                                " has no positive mass");
  }
  const double floor = kZeroSpectrumRatio * largest;
  double h = 0.0;
  for (double v : sp.values) {
    if (v <= floor) continue;
    const double p = v / total;
    h -= p * std::log(p);
  }
  h = std::max(h, 0.0);
  return base == LogBase::bits ? h / std::numbers::ln2 : h;
}

double effective_rank(const Spectrum& sp) { return std::exp(spectral_entropy(sp, LogBase::nats)); }

double nuclear_norm(const Spectrum& sp) {
  // Ascending summation keeps the small tail from being absorbed.
  double sum = 0.0;
  for (auto it = sp.values.rbegin(); it != sp.values.rend(); ++it) sum += *it;
  return sum;
}

MetricBundle bundle(const NormalizedStates& s, const MetricConfig& cfg) {
  const std::size_t n = s.rows();
  const std::size_t d = s.cols();

  Spectrum hidden = hidden_spectrum(s, cfg.k, cfg.backend, cfg.randomized);
  Spectrum cov;
  if (hidden.backend == Backend::randomized) {
    cov = covariance_spectrum_from_hidden(hidden, n, d);
  } else {
    cov = exact_spectrum(covariance(s));
    if (cfg.k) {
      cov.values.resize(std::min(*cfg.k, cov.values.size()));
      cov.k = cov.values.size();
    }
  }

  MetricBundle b;
  b.entropy_nats = spectral_entropy(cov, LogBase::nats);
  b.entropy_bits = b.entropy_nats / std::numbers::ln2;
  b.effective_rank = std::exp(b.entropy_nats);
  b.mnn_hidden = nuclear_norm(hidden);
  b.mnn_covariance = nuclear_norm(cov);
  b.k_used = hidden.k;
  b.label = s.source_label();
  b.n_tokens = n;
  b.hidden_dim = d;
  b.config = cfg;
  return b;
}

}  // namespace reprmetrics
