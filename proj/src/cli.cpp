#include "reprmetrics/cli.hpp"

#include "reprmetrics/bench.hpp"
#include "reprmetrics/comparison.hpp"
#include "reprmetrics/error.hpp"
#include "reprmetrics/report.hpp"
#include "reprmetrics/verify.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace reprmetrics {

namespace {

struct RunConfig {
  std::vector<double> weights{0.5, 0.5};
  std::string delta_kind = "erank";
  std::string k = "full";
  std::string backend = "exact";
  std::string base = "nats";
  std::string skip_policy = "drop";
  std::string normalize_terms = "on";
  bool skip_centering = false;
  std::uint64_t seed = 42;
  std::size_t oversample = 10;
  std::size_t power_iters = 2;
  std::size_t threads = 1;
  std::string output;

  // compute
  std::string input;
  // compare / sweep
  std::string manifest_a;
  std::string manifest_b;
  std::string grid;
  std::size_t grid_steps = 10;
  // bench
  std::string sizes = "256,512,1024";
  std::size_t bench_k = 64;
  std::size_t exact_max = 4096;
  std::size_t repeats = 1;
  // verify
  std::size_t cases = 200;
  std::size_t max_dim = 64;
  double perturb = 0.0;
};

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse " + what + " '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

Weights make_weights(double w_entropy, double w_mnn, const RunConfig& rc) {
  Weights w;
  w.w_entropy = w_entropy;
  w.w_mnn = w_mnn;
  w.delta_kind = rc.delta_kind == "entropy" ? DeltaKind::entropy : DeltaKind::effective_rank;
  w.normalize_terms = rc.normalize_terms == "on";
  w.validate();
  return w;
}

Weights parse_weight_pair(const std::string& text, const RunConfig& rc) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw Error(ErrorCode::InvalidArgument, "weights must be 'w_entropy,w_mnn', got '" + text + "'");
  }
  return make_weights(parse_double(parts[0], "weight"), parse_double(parts[1], "weight"), rc);
}

CorpusConfig corpus_config(const RunConfig& rc) {
  CorpusConfig cfg;
  if (rc.k != "full") {
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(rc.k.data(), rc.k.data() + rc.k.size(), k);
    if (ec != std::errc{} || ptr != rc.k.data() + rc.k.size() || k == 0) {
      throw Error(ErrorCode::InvalidArgument, "--k must be 'full' or a positive integer, got '" + rc.k + "'");
    }
    cfg.metrics.k = k;
  }
  cfg.metrics.base = rc.base == "bits" ? LogBase::bits : LogBase::nats;
  cfg.metrics.backend = rc.backend == "randomized" ? Backend::randomized : Backend::exact;
  cfg.metrics.randomized = {rc.oversample, rc.power_iters, rc.seed};
  cfg.normalize.skip_centering = rc.skip_centering;
  cfg.skip_policy = rc.skip_policy == "strict" ? SkipPolicy::strict : SkipPolicy::drop;
  if (rc.threads == 0) throw Error(ErrorCode::InvalidArgument, "--threads must be >= 1");
  cfg.threads = rc.threads;
  return cfg;
}

void emit(const std::string& text, const RunConfig& rc, std::ostream& out) {
  if (rc.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(rc.output, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::FileUnreadable, "cannot write '" + rc.output + "'");
  file << text;
  if (!file) throw Error(ErrorCode::FileUnreadable, "write failed for '" + rc.output + "'");
}

DatasetManifest manifest_for_input(const std::string& input) {
  const std::filesystem::path p(input);
  if (p.extension() == ".npy" || p.extension() == ".csv") {
    return DatasetManifest{{{p, p.stem().string()}}, std::nullopt};
  }
  return load_manifest(p);
}

int cmd_compute(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const CorpusConfig cfg = corpus_config(rc);
  const CorpusMetrics metrics = compute_corpus(manifest_for_input(rc.input), cfg);
  if (metrics.bundles.empty()) {
    throw Error(ErrorCode::AllSequencesSkipped, "every sequence in '" + rc.input + "' was skipped");
  }
  emit(to_json(metrics, cfg), rc, out);
  for (const auto& s : metrics.skipped) err << "skipped " << s.label << ": " << s.reason << '\n';
  return metrics.skipped.empty() ? kExitOk : kExitPartial;
}

int cmd_compare(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const Weights w = make_weights(rc.weights.at(0), rc.weights.at(1), rc);
  const CorpusConfig cfg = corpus_config(rc);
  const ComparisonReport report =
      compare_corpus(load_manifest(rc.manifest_a), load_manifest(rc.manifest_b), w, cfg);
  emit(to_json(report), rc, out);

  std::ostream& summary = rc.output.empty() ? err : out;
  summary << "aggregate composite: " << format_double(report.aggregate.mean.composite)
          << " (pairs=" << report.aggregate.count << ", skipped=" << report.skipped.size() << ")\n";
  for (const auto& s : report.skipped) err << "skipped " << s.label << ": " << s.reason << '\n';
  return report.skipped.empty() ? kExitOk : kExitPartial;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  std::vector<Weights> grid;
  if (!rc.grid.empty()) {
    for (const auto& pair : split(rc.grid, ';')) grid.push_back(parse_weight_pair(pair, rc));
  } else {
    if (rc.grid_steps == 0) throw Error(ErrorCode::InvalidArgument, "--grid-steps must be >= 1");
    for (std::size_t i = 0; i <= rc.grid_steps; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(rc.grid_steps);
      grid.push_back(make_weights(t, 1.0 - t, rc));
    }
  }
  const CorpusConfig cfg = corpus_config(rc);
  const CorpusBundles bundles =
      compute_pair_bundles(load_manifest(rc.manifest_a), load_manifest(rc.manifest_b), cfg);
  emit(sweep_to_csv(weight_sweep(bundles, grid)), rc, out);
  for (const auto& s : bundles.skipped) err << "skipped " << s.label << ": " << s.reason << '\n';
  return bundles.skipped.empty() ? kExitOk : kExitPartial;
}

int cmd_bench(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  BenchOptions opts;
  for (const auto& s : split(rc.sizes, ',')) {
    if (s.empty()) continue;
    opts.sizes.push_back(static_cast<std::size_t>(parse_double(s, "size")));
  }
  opts.k = rc.bench_k;
  opts.randomized = {rc.oversample, rc.power_iters, rc.seed};
  opts.exact_max = rc.exact_max;
  opts.repeats = rc.repeats;
  const BenchResult result = run_bench(opts);
  emit(bench_to_csv(result), rc, out);
  if (result.max_relative_error_largest_exact) {
    err << "max relative error (largest exact size): "
        << format_double(*result.max_relative_error_largest_exact) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  opts.seed = rc.seed;
  opts.cases = rc.cases;
  opts.max_dim = rc.max_dim;
  opts.perturbation = rc.perturb;
  const VerifyResult r = run_verification(opts);
  if (!r.passed) {
    err << "verify FAILED: " << r.first_failure << '\n';
    return kExitError;
  }
  out << "verify passed: " << r.cases_run << " cases, max |eig diff| "
      << format_double(r.max_eigenvalue_diff) << ", max |cross diff| "
      << format_double(r.max_cross_spectrum_diff) << ", max |entropy diff| "
      << format_double(r.max_entropy_diff) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Spectral representation metrics for hidden-state matrices", "reprmetrics"};
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  app.add_option("--weights", rc.weights, "Composite weights w_entropy,w_mnn")
      ->expected(2)
      ->delimiter(',');
  app.add_option("--delta-kind", rc.delta_kind, "First composite term")
      ->check(CLI::IsMember({"entropy", "erank"}));
  app.add_option("--k", rc.k, "Spectrum truncation: full or a positive integer");
  app.add_option("--backend", rc.backend, "SVD backend")->check(CLI::IsMember({"exact", "randomized"}));
  app.add_option("--base", rc.base, "Entropy unit")->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--skip-policy", rc.skip_policy, "Degenerate sequences: drop or abort")
      ->check(CLI::IsMember({"drop", "strict"}));
  app.add_option("--normalize-terms", rc.normalize_terms, "Scale composite terms before weighting")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_flag("--skip-centering", rc.skip_centering, "Only L2-scale rows, no mean-centering");
  app.add_option("--seed", rc.seed, "Seed for randomized SVD, bench and verify");
  app.add_option("--oversample", rc.oversample, "Randomized SVD oversampling");
  app.add_option("--power-iters", rc.power_iters, "Randomized SVD power iterations");
  app.add_option("--threads", rc.threads, "Worker threads across sequences")
      ->envname("REPRMETRICS_THREADS");
  app.add_option("--output", rc.output, "Write the report here instead of stdout");

  auto* compute = app.add_subcommand("compute", "Metric bundles for one model");
  compute->add_option("input", rc.input, "Manifest, or a single .npy/.csv matrix")->required();

  auto* compare = app.add_subcommand("compare", "Composite comparison of model B against model A");
  compare->add_option("manifest_a", rc.manifest_a, "Model A manifest")->required();
  compare->add_option("manifest_b", rc.manifest_b, "Model B manifest")->required();

  auto* sweep = app.add_subcommand("sweep", "Aggregate composite over a grid of weights");
  sweep->add_option("manifest_a", rc.manifest_a, "Model A manifest")->required();
  sweep->add_option("manifest_b", rc.manifest_b, "Model B manifest")->required();
  sweep->add_option("--grid", rc.grid, "Explicit grid 'we,wm;we,wm;...' (overrides --grid-steps)");
  sweep->add_option("--grid-steps", rc.grid_steps, "Grid (t, 1-t) for t = 0, 1/N, ..., 1");

  auto* bench = app.add_subcommand("bench", "Time exact vs randomized SVD on synthetic matrices");
  bench->add_option("--sizes", rc.sizes, "Comma-separated square sizes (may be empty)");
  bench->add_option("--bench-k", rc.bench_k, "Randomized truncation");
  bench->add_option("--exact-max", rc.exact_max, "Skip the exact backend above this size");
  bench->add_option("--repeats", rc.repeats, "Best-of repetitions per timing");

  auto* verify = app.add_subcommand("verify", "Oracle-equivalence self-check");
  verify->add_option("--cases", rc.cases, "Random matrices to check");
  verify->add_option("--max-dim", rc.max_dim, "Largest n and d drawn");
  verify->add_option("--perturb", rc.perturb, "Testing hook: offset added to the main path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (compute->parsed()) return cmd_compute(rc, out, err);
    if (compare->parsed()) return cmd_compare(rc, out, err);
    if (sweep->parsed()) return cmd_sweep(rc, out, err);
    if (bench->parsed()) return cmd_bench(rc, out, err);
    if (verify->parsed()) return cmd_verify(rc, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace reprmetrics
