#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace reprmetrics {

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t cases = 200;
  std::size_t max_dim = 64;  // n and d are drawn from [2, max_dim]
  // Added to the leading main-path eigenvalue before comparison. Only for
  // checking that the suite can fail.
  double perturbation = 0.0;
};

struct VerifyTolerances {
  double eigenvalue = 1e-8;      // exact_spectrum vs Jacobi
  double cross_spectrum = 1e-8;  // sigma(H)^2 / n vs sigma(Sigma)
  double entropy = 1e-10;        // spectral_entropy vs direct_entropy
};

struct VerifyResult {
  bool passed = true;
  std::size_t cases_run = 0;
  double max_eigenvalue_diff = 0.0;
  double max_cross_spectrum_diff = 0.0;
  double max_entropy_diff = 0.0;
  std::string first_failure;  // empty when passed
};

// Seeded oracle-equivalence suite over random matrices: the main spectral and
// entropy paths against the independent oracle. Stops at the first failing case.
VerifyResult run_verification(const VerifyOptions& opts = {}, const VerifyTolerances& tol = {});

}  // namespace reprmetrics
