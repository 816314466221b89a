#pragma once

#include "reprmetrics/io.hpp"
#include "reprmetrics/metrics.hpp"

#include <string>
#include <vector>

namespace reprmetrics {

// Which between-model delta fills the first slot of the composite.
enum class DeltaKind { entropy, effective_rank };

std::string_view to_string(DeltaKind kind);

struct Weights {
  double w_entropy = 0.5;
  double w_mnn = 0.5;
  DeltaKind delta_kind = DeltaKind::effective_rank;
  // Divide each side's metric by its attainable scale before differencing:
  // entropy by log(d), effective rank by d, MNN by sqrt(min(n, d)).
  bool normalize_terms = true;

  // Throws InvalidWeights unless both weights are finite, >= 0, and not both 0.
  void validate() const;
};

// All deltas are B minus A.
struct PairScore {
  double delta_entropy = 0.0;  // in the unit of the bundles' LogBase
  double delta_erank = 0.0;
  double delta_mnn = 0.0;
  double term_primary = 0.0;  // delta_entropy or delta_erank, normalized when enabled
  double term_mnn = 0.0;      // delta_mnn, normalized when enabled
  double composite = 0.0;     // w_entropy * term_primary + w_mnn * term_mnn
};

// Throws ConfigMismatch if the bundles were computed with different settings.
PairScore score_pair(const MetricBundle& a, const MetricBundle& b, const Weights& w);
double composite(const MetricBundle& a, const MetricBundle& b, const Weights& w);

enum class SkipPolicy { drop, strict };

std::string_view to_string(SkipPolicy policy);

struct CorpusConfig {
  MetricConfig metrics{};
  NormalizeOptions normalize{};
  SkipPolicy skip_policy = SkipPolicy::drop;
  std::size_t threads = 1;  // results do not depend on this
  LoadOptions load{};
};

struct SkippedSequence {
  std::string label;
  std::string reason;
};

struct CorpusMetrics {
  std::vector<MetricBundle> bundles;  // manifest order, skipped entries removed
  std::vector<SkippedSequence> skipped;
};

struct BundlePair {
  std::string label;
  MetricBundle a;
  MetricBundle b;
};

struct CorpusBundles {
  std::vector<BundlePair> pairs;
  std::vector<SkippedSequence> skipped;
};

// Bundles for every entry of one manifest. Degenerate sequences are dropped or
// rethrown according to the skip policy; other errors always propagate.
CorpusMetrics compute_corpus(const DatasetManifest& manifest, const CorpusConfig& cfg);

// Bundles for sequence i of model A against sequence i of model B. Throws
// ManifestMismatch when lengths or labels disagree. A pair is skipped when
// either side is degenerate.
CorpusBundles compute_pair_bundles(const DatasetManifest& a, const DatasetManifest& b,
                                   const CorpusConfig& cfg);

struct SequenceComparison {
  std::string label;
  MetricBundle bundle_a;
  MetricBundle bundle_b;
  PairScore score;
};

struct AggregateScores {
  PairScore mean;  // arithmetic mean of each per-sequence field
  std::size_t count = 0;
};

struct ComparisonReport {
  std::vector<SequenceComparison> per_sequence;
  AggregateScores aggregate;
  Weights weights_used;
  std::vector<SkippedSequence> skipped;
  CorpusConfig config;
  std::string config_fingerprint;
};

// Throws AllSequencesSkipped when no pair survived.
ComparisonReport assemble_report(const CorpusBundles& bundles, const Weights& w,
                                 const CorpusConfig& cfg);

ComparisonReport compare_corpus(const DatasetManifest& a, const DatasetManifest& b,
                                const Weights& w, const CorpusConfig& cfg);

struct SweepRow {
  Weights weights;
  AggregateScores aggregate;
};

// One aggregate per grid point, reusing the bundles.
std::vector<SweepRow> weight_sweep(const CorpusBundles& bundles, const std::vector<Weights>& grid);

// Hex FNV-1a 64 of every setting that can change a report (threads excluded).
std::string config_fingerprint(const CorpusConfig& cfg, const Weights& w);

}  // namespace reprmetrics
