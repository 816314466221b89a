#include "reprmetrics/bench.hpp"

#include "reprmetrics/report.hpp"
#include "reprmetrics/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace reprmetrics {

namespace {

template <typename Fn>
double best_seconds(std::size_t repeats, Fn&& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

}  // namespace

double max_relative_error(const std::vector<double>& approx, const std::vector<double>& exact) {
  double worst = 0.0;
  for (std::size_t i = 0; i < approx.size() && i < exact.size(); ++i) {
    const double denom = exact[i] > 0.0 ? exact[i] : 1.0;
    worst = std::max(worst, std::abs(approx[i] - exact[i]) / denom);
  }
  return worst;
}

BenchResult run_bench(const BenchOptions& opts) {
  BenchResult result;
  std::size_t largest_exact = 0;
  for (std::size_t size : opts.sizes) {
    if (size < 2) continue;
    BenchRow row;
    row.size = size;
    row.k = std::min(opts.k, size);
    RandomizedOptions ropts = opts.randomized;
    ropts.oversample = std::min(ropts.oversample, size - row.k);

    const Matrix h = synthetic::low_rank_plus_noise(size, size, std::min<std::size_t>(row.k, size),
                                                    opts.randomized.seed);
    Spectrum approx;
    row.randomized_seconds =
        best_seconds(opts.repeats, [&] { approx = randomized_singular_values(h, row.k, ropts); });
    if (size <= opts.exact_max) {
      Spectrum exact;
      row.exact_seconds = best_seconds(opts.repeats, [&] { exact = exact_singular_values(h); });
      row.max_relative_error = max_relative_error(approx.values, exact.values);
      if (size >= largest_exact) {
        largest_exact = size;
        result.max_relative_error_largest_exact = row.max_relative_error;
      }
    }
    result.rows.push_back(row);
  }
  return result;
}

std::string bench_to_csv(const BenchResult& result) {
  std::string out = "size,k,exact_seconds,randomized_seconds,speedup,max_relative_error\n";
  for (const auto& r : result.rows) {
    out += std::to_string(r.size) + "," + std::to_string(r.k) + ",";
    out += r.exact_seconds ? format_double(*r.exact_seconds) : "skipped";
    out += "," + format_double(r.randomized_seconds) + ",";
    out += r.exact_seconds ? format_double(*r.exact_seconds / r.randomized_seconds) : "skipped";
    out += ",";
    out += r.max_relative_error ? format_double(*r.max_relative_error) : "skipped";
    out += "\n";
  }
  return out;
}

}  // namespace reprmetrics
