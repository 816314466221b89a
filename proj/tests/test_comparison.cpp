#include "reprmetrics/comparison.hpp"
#include "reprmetrics/error.hpp"
#include "reprmetrics/report.hpp"
#include "reprmetrics/synthetic.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace reprmetrics;
using reprmetrics::testing::TempDir;

namespace {

MetricBundle make_bundle(double h, double erank, double mnn, std::size_t n, std::size_t d) {
  MetricBundle b;
  b.entropy_nats = h;
  b.entropy_bits = h / std::log(2.0);
  b.effective_rank = erank;
  b.mnn_hidden = mnn;
  b.mnn_covariance = 1.0;
  b.n_tokens = n;
  b.hidden_dim = d;
  b.k_used = d;
  return b;
}

MetricBundle random_bundle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> dim(2, 512);
  const std::size_t n = dim(rng);
  const std::size_t d = dim(rng);
  const double h = u(rng) * std::log(static_cast<double>(d));
  return make_bundle(h, std::exp(h), 1.0 + u(rng) * 40.0, n, d);
}

// Writes `count` random sequences (some constant when `degenerate` lists them)
// plus a manifest, returning the manifest path.
std::filesystem::path write_corpus(const TempDir& dir, const std::string& tag, std::size_t count,
                                   std::uint64_t seed, const std::vector<std::size_t>& degenerate = {}) {
  DatasetManifest m;
  for (std::size_t i = 0; i < count; ++i) {
    Matrix x = synthetic::gaussian(12 + i, 6, seed + i);
    if (std::find(degenerate.begin(), degenerate.end(), i) != degenerate.end()) x.setOnes();
    const auto p = dir / (tag + "_" + std::to_string(i) + ".npy");
    write_npy(p, x);
    m.entries.push_back({p, "seq" + std::to_string(i)});
  }
  const auto mp = dir / (tag + ".tsv");
  write_manifest(mp, m);
  return mp;
}

}  // namespace

TEST(ScorePair, UnnormalizedTermsAreRawDeltas) {
  const MetricBundle a = make_bundle(0.5, std::exp(0.5), 3.0, 10, 4);
  const MetricBundle b = make_bundle(0.75, std::exp(0.75), 2.0, 10, 4);
  const Weights w{.w_entropy = 0.25, .w_mnn = 0.75, .delta_kind = DeltaKind::entropy,
                  .normalize_terms = false};
  const PairScore s = score_pair(a, b, w);
  EXPECT_EQ(s.delta_entropy, 0.25);
  EXPECT_EQ(s.delta_mnn, -1.0);
  EXPECT_EQ(s.term_primary, 0.25);
  EXPECT_EQ(s.composite, 0.25 * 0.25 + 0.75 * -1.0);
}

TEST(ScorePair, NormalizedTermsUseEachSidesScale) {
  const MetricBundle a = make_bundle(std::log(2.0), 2.0, 2.0, 4, 4);
  const MetricBundle b = make_bundle(std::log(3.0), 3.0, 3.0, 9, 16);
  const PairScore s = score_pair(a, b, {});
  EXPECT_DOUBLE_EQ(s.term_primary, 3.0 / 16.0 - 2.0 / 4.0);
  EXPECT_DOUBLE_EQ(s.term_mnn, 3.0 / 3.0 - 2.0 / 2.0);
  EXPECT_DOUBLE_EQ(s.composite, 0.5 * s.term_primary + 0.5 * s.term_mnn);

  const PairScore e = score_pair(a, b, {.w_entropy = 1.0, .w_mnn = 0.0, .delta_kind = DeltaKind::entropy});
  EXPECT_DOUBLE_EQ(e.composite, std::log(3.0) / std::log(16.0) - std::log(2.0) / std::log(4.0));
}

TEST(ScorePair, ConfigMismatchRejected) {
  MetricBundle a = make_bundle(0.1, 1.1, 1.0, 4, 4);
  MetricBundle b = a;
  b.config.k = 2;
  try {
    score_pair(a, b, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigMismatch);
  }
}

TEST(Weights, Validation) {
  EXPECT_NO_THROW((Weights{1.0, 0.0}.validate()));
  for (const Weights& w : {Weights{-0.1, 1.0}, Weights{0.0, 0.0}, Weights{NAN, 1.0},
                           Weights{1.0, INFINITY}}) {
    try {
      w.validate();
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidWeights);
    }
  }
}

TEST(CompositeProperty, SwapNegatesExactly) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const MetricBundle a = random_bundle(rng);
    const MetricBundle b = random_bundle(rng);
    for (DeltaKind kind : {DeltaKind::entropy, DeltaKind::effective_rank}) {
      for (bool norm : {true, false}) {
        const Weights w{u(rng), u(rng), kind, norm};
        EXPECT_EQ(composite(a, b, w), -composite(b, a, w));
      }
    }
  }
}

TEST(CompositeProperty, SelfComparisonIsZero) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const MetricBundle a = random_bundle(rng);
    const PairScore s = score_pair(a, a, {});
    EXPECT_EQ(s.composite, 0.0);
    EXPECT_EQ(s.delta_entropy, 0.0);
    EXPECT_EQ(s.delta_mnn, 0.0);
  }
}

TEST(CompositeProperty, LinearInWeights) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const MetricBundle a = random_bundle(rng);
    const MetricBundle b = random_bundle(rng);
    const double e1 = u(rng), m1 = u(rng), e2 = u(rng), m2 = u(rng), alpha = u(rng);
    const double lhs = composite(a, b, {e1 + alpha * e2, m1 + alpha * m2});
    const double rhs = composite(a, b, {e1, m1}) + alpha * composite(a, b, {e2, m2});
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(CompositeProperty, SignFollowsDeltasUnderSingleWeight) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    MetricBundle a = random_bundle(rng);
    MetricBundle b = a;
    b.mnn_hidden = a.mnn_hidden * 1.5;
    EXPECT_GT(composite(a, b, {0.0, 1.0}), 0.0);
    EXPECT_LT(composite(b, a, {0.0, 1.0}), 0.0);
    b = a;
    b.effective_rank += 0.5;
    EXPECT_GT(composite(a, b, {1.0, 0.0}), 0.0);
  }
}

TEST(Corpus, DropPolicySkipsDegenerate) {
  TempDir dir;
  const auto mp = write_corpus(dir, "a", 4, 1, {2});
  const CorpusMetrics m = compute_corpus(load_manifest(mp), {});
  ASSERT_EQ(m.bundles.size(), 3u);
  ASSERT_EQ(m.skipped.size(), 1u);
  EXPECT_EQ(m.skipped[0].label, "seq2");
  EXPECT_EQ(m.bundles[2].label, "seq3");
}

TEST(Corpus, StrictPolicyRaises) {
  TempDir dir;
  const auto mp = write_corpus(dir, "a", 3, 1, {1});
  CorpusConfig cfg;
  cfg.skip_policy = SkipPolicy::strict;
  try {
    compute_corpus(load_manifest(mp), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVectorAfterCentering);
  }
}

TEST(Corpus, OtherErrorsPropagate) {
  TempDir dir;
  DatasetManifest m{{{dir / "missing.npy", "x"}}, {}};
  try {
    compute_corpus(m, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FileUnreadable);
  }
}

TEST(Compare, SelfComparisonAndSkips) {
  TempDir dir;
  const auto mp = write_corpus(dir, "a", 5, 3, {0});
  const DatasetManifest m = load_manifest(mp);
  const ComparisonReport r = compare_corpus(m, m, {}, {});
  EXPECT_EQ(r.aggregate.count, 4u);
  EXPECT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.aggregate.mean.composite, 0.0);
  for (const auto& s : r.per_sequence) EXPECT_EQ(s.score.composite, 0.0);
}

TEST(Compare, EntropyOnlyWeightsGiveMeanEntropyDelta) {
  TempDir dir;
  const DatasetManifest a = load_manifest(write_corpus(dir, "a", 4, 10));
  const DatasetManifest b = load_manifest(write_corpus(dir, "b", 4, 30));
  const ComparisonReport raw =
      compare_corpus(a, b, {1.0, 0.0, DeltaKind::entropy, false}, {});
  EXPECT_EQ(raw.aggregate.mean.composite, raw.aggregate.mean.delta_entropy);
  // Normalized terms divide each side by log d; every sequence here has d = 6.
  const ComparisonReport scaled = compare_corpus(a, b, {1.0, 0.0, DeltaKind::entropy, true}, {});
  EXPECT_NEAR(scaled.aggregate.mean.composite, raw.aggregate.mean.delta_entropy / std::log(6.0), 1e-15);
}

TEST(Compare, MismatchedManifests) {
  TempDir dir;
  const DatasetManifest a = load_manifest(write_corpus(dir, "a", 3, 1));
  const DatasetManifest b = load_manifest(write_corpus(dir, "b", 2, 1));
  DatasetManifest relabelled = a;
  relabelled.entries[1].label = "other";
  for (const DatasetManifest* other : std::vector<const DatasetManifest*>{&b, &relabelled}) {
    try {
      compare_corpus(a, *other, {}, {});
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ManifestMismatch);
    }
  }
}

TEST(Compare, AllSkipped) {
  TempDir dir;
  const DatasetManifest a = load_manifest(write_corpus(dir, "a", 2, 1, {0, 1}));
  try {
    compare_corpus(a, a, {}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllSequencesSkipped);
  }
}

TEST(Compare, ThreadCountDoesNotChangeBytes) {
  TempDir dir;
  const DatasetManifest a = load_manifest(write_corpus(dir, "a", 9, 10, {4}));
  const DatasetManifest b = load_manifest(write_corpus(dir, "b", 9, 50));
  CorpusConfig one;
  CorpusConfig four;
  four.threads = 4;
  const std::string j1 = to_json(compare_corpus(a, b, {}, one));
  const std::string j4 = to_json(compare_corpus(a, b, {}, four));
  EXPECT_EQ(j1, j4);
  EXPECT_EQ(j1, to_json(compare_corpus(a, b, {}, one)));
  EXPECT_EQ(config_fingerprint(one, {}), config_fingerprint(four, {}));
}

TEST(Compare, AggregateIsMeanOfRows) {
  TempDir dir;
  const DatasetManifest a = load_manifest(write_corpus(dir, "a", 4, 10));
  const DatasetManifest b = load_manifest(write_corpus(dir, "b", 4, 70));
  const ComparisonReport r = compare_corpus(a, b, {}, {});
  double sum = 0.0;
  for (const auto& s : r.per_sequence) sum += s.score.composite;
  EXPECT_NEAR(r.aggregate.mean.composite, sum / 4.0, 1e-15);
  // B - A flips sign on swap.
  const ComparisonReport swapped = compare_corpus(b, a, {}, {});
  EXPECT_EQ(swapped.per_sequence[0].score.composite, -r.per_sequence[0].score.composite);
}

TEST(Sweep, OneRowPerGridPointMatchingCompare) {
  TempDir dir;
  const DatasetManifest a = load_manifest(write_corpus(dir, "a", 3, 10));
  const DatasetManifest b = load_manifest(write_corpus(dir, "b", 3, 20));
  const CorpusBundles bundles = compute_pair_bundles(a, b, {});
  const std::vector<Weights> grid{{1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}};
  const auto rows = weight_sweep(bundles, grid);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(rows[i].aggregate.mean.composite, compare_corpus(a, b, grid[i], {}).aggregate.mean.composite);
  }
  EXPECT_THROW(weight_sweep(bundles, {}), Error);
}

TEST(Fingerprint, ChangesWithSettings) {
  CorpusConfig base;
  CorpusConfig other;
  other.metrics.randomized.seed = 7;
  EXPECT_EQ(config_fingerprint(base, {}).size(), 16u);
  EXPECT_NE(config_fingerprint(base, {}), config_fingerprint(other, {}));
  EXPECT_NE(config_fingerprint(base, {}), config_fingerprint(base, {0.4, 0.6}));
}
