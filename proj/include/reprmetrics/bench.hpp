#pragma once

#include "reprmetrics/spectral.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace reprmetrics {

struct BenchOptions {
  std::vector<std::size_t> sizes;  // square n = d problems
  std::size_t k = 64;
  RandomizedOptions randomized{};
  std::size_t exact_max = 4096;  // larger sizes skip the exact backend
  std::size_t repeats = 1;       // best-of timing
};

struct BenchRow {
  std::size_t size = 0;
  std::size_t k = 0;
  std::optional<double> exact_seconds;  // empty when skipped
  double randomized_seconds = 0.0;
  std::optional<double> max_relative_error;  // top-k randomized vs exact
};

struct BenchResult {
  std::vector<BenchRow> rows;
  // Error on the largest size that also ran the exact backend.
  std::optional<double> max_relative_error_largest_exact;
};

// Times exact full-spectrum SVD against the randomized top-k on seeded
// low-rank-plus-noise matrices. k is clamped to fit each size.
BenchResult run_bench(const BenchOptions& opts);

std::string bench_to_csv(const BenchResult& result);

// max_i |approx_i - exact_i| / exact_i over the first approx.size() values.
double max_relative_error(const std::vector<double>& approx, const std::vector<double>& exact);

}  // namespace reprmetrics
