#include "reprmetrics/verify.hpp"

#include "reprmetrics/metrics.hpp"
#include "reprmetrics/oracle.hpp"
#include "reprmetrics/synthetic.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace reprmetrics {

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = a.size() == b.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

VerifyResult run_verification(const VerifyOptions& opts, const VerifyTolerances& tol) {
  VerifyResult result;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> dim(2, std::max<std::size_t>(opts.max_dim, 2));
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);

  for (std::size_t c = 0; c < opts.cases; ++c) {
    const std::size_t n = dim(rng);
    const std::size_t d = dim(rng);
    const std::uint64_t case_seed = rng();
    Matrix raw = synthetic::gaussian(n, d, case_seed) * std::pow(10.0, log_scale(rng));
    const NormalizedStates s = normalize(HiddenStateMatrix(std::move(raw)));

    const CovarianceMatrix cov = covariance(s);
    Spectrum main_cov = exact_spectrum(cov);
    main_cov.values.front() += opts.perturbation;
    const oracle::OracleResult ref = oracle::jacobi_eigenvalues(cov.data);

    const Spectrum hidden = exact_singular_values(s.data());
    const Spectrum implied = covariance_spectrum_from_hidden(hidden, n, d);
    std::vector<double> cov_head(main_cov.values.begin(),
                                 main_cov.values.begin() + static_cast<std::ptrdiff_t>(implied.k));

    const double eig_diff = max_abs_diff(main_cov.values, ref.eigenvalues);
    const double cross_diff = max_abs_diff(implied.values, cov_head);
    const double ent_diff =
        std::abs(spectral_entropy(main_cov, LogBase::nats) - oracle::direct_entropy(ref.eigenvalues));

    result.max_eigenvalue_diff = std::max(result.max_eigenvalue_diff, eig_diff);
    result.max_cross_spectrum_diff = std::max(result.max_cross_spectrum_diff, cross_diff);
    result.max_entropy_diff = std::max(result.max_entropy_diff, ent_diff);
    ++result.cases_run;

    const char* failed = eig_diff >= tol.eigenvalue        ? "eigenvalues vs Jacobi oracle"
                         : cross_diff >= tol.cross_spectrum ? "sigma(H)^2/n vs sigma(Sigma)"
                         : ent_diff >= tol.entropy          ? "entropy vs direct oracle"
                                                            : nullptr;
    if (failed) {
      std::ostringstream msg;
      msg << "case " << c << " (n=" << n << ", d=" << d << ", seed=" << case_seed << "): " << failed
          << " max |diff| = eig " << eig_diff << ", cross " << cross_diff << ", entropy " << ent_diff;
      result.passed = false;
      result.first_failure = msg.str();
      break;
    }
  }
  return result;
}

}  // namespace reprmetrics
