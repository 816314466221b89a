#include "reprmetrics/comparison.hpp"

#include "parallel.hpp"
#include "reprmetrics/error.hpp"
#include "reprmetrics/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>

namespace reprmetrics {

namespace {

double entropy_scale(const MetricBundle& b) {
  if (b.hidden_dim <= 1) return 1.0;
  const double d = static_cast<double>(b.hidden_dim);
  return b.config.base == LogBase::bits ? std::log2(d) : std::log(d);
}

double mnn_scale(const MetricBundle& b) {
  return std::sqrt(static_cast<double>(std::min(b.n_tokens, b.hidden_dim)));
}

// Outcome of computing one sequence: a bundle, a degeneracy note, or an error.
struct SlotResult {
  std::optional<MetricBundle> bundle;
  std::optional<std::string> degenerate;
  std::exception_ptr error;
};

SlotResult compute_slot(const DatasetManifest& manifest, std::size_t index,
                        const CorpusConfig& cfg) {
  SlotResult out;
  try {
    const HiddenStateMatrix m = load_entry(manifest, index, cfg.load);
    out.bundle = bundle(normalize(m, cfg.normalize), cfg.metrics);
  } catch (const ZeroVectorError& e) {
    out.degenerate = e.what();
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

PairScore mean_scores(const std::vector<SequenceComparison>& rows) {
  PairScore sum;
  for (const auto& r : rows) {
    sum.delta_entropy += r.score.delta_entropy;
    sum.delta_erank += r.score.delta_erank;
    sum.delta_mnn += r.score.delta_mnn;
    sum.term_primary += r.score.term_primary;
    sum.term_mnn += r.score.term_mnn;
    sum.composite += r.score.composite;
  }
  const double n = static_cast<double>(rows.size());
  sum.delta_entropy /= n;
  sum.delta_erank /= n;
  sum.delta_mnn /= n;
  sum.term_primary /= n;
  sum.term_mnn /= n;
  sum.composite /= n;
  return sum;
}

}  // namespace

std::string_view to_string(DeltaKind kind) {
  return kind == DeltaKind::entropy ? "entropy" : "erank";
}

std::string_view to_string(SkipPolicy policy) {
  return policy == SkipPolicy::drop ? "drop" : "strict";
}

void Weights::validate() const {
  const bool ok = std::isfinite(w_entropy) && std::isfinite(w_mnn) && w_entropy >= 0.0 &&
                  w_mnn >= 0.0 && w_entropy + w_mnn > 0.0;
  if (!ok) {
    throw Error(ErrorCode::InvalidWeights, "weights (" + format_double(w_entropy) + ", " +
                                               format_double(w_mnn) +
                                               ") must be non-negative with a positive sum");
  }
}

PairScore score_pair(const MetricBundle& a, const MetricBundle& b, const Weights& w) {
  if (!(a.config == b.config)) {
    throw Error(ErrorCode::ConfigMismatch,
                "bundles '" + a.label + "' and '" + b.label + "' were computed with different settings");
  }
  w.validate();

  PairScore s;
  s.delta_entropy = b.entropy() - a.entropy();
  s.delta_erank = b.effective_rank - a.effective_rank;
  s.delta_mnn = b.mnn_hidden - a.mnn_hidden;

  if (w.normalize_terms) {
    if (w.delta_kind == DeltaKind::entropy) {
      s.term_primary = b.entropy() / entropy_scale(b) - a.entropy() / entropy_scale(a);
    } else {
      s.term_primary = b.effective_rank / static_cast<double>(b.hidden_dim) -
                       a.effective_rank / static_cast<double>(a.hidden_dim);
    }
    s.term_mnn = b.mnn_hidden / mnn_scale(b) - a.mnn_hidden / mnn_scale(a);
  } else {
    s.term_primary = w.delta_kind == DeltaKind::entropy ? s.delta_entropy : s.delta_erank;
    s.term_mnn = s.delta_mnn;
  }
  s.composite = w.w_entropy * s.term_primary + w.w_mnn * s.term_mnn;
  return s;
}

double composite(const MetricBundle& a, const MetricBundle& b, const Weights& w) {
  return score_pair(a, b, w).composite;
}

CorpusMetrics compute_corpus(const DatasetManifest& manifest, const CorpusConfig& cfg) {
  std::vector<SlotResult> slots(manifest.size());
  detail::parallel_for(manifest.size(), cfg.threads,
                       [&](std::size_t i) { slots[i] = compute_slot(manifest, i, cfg); });

  CorpusMetrics out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].error) std::rethrow_exception(slots[i].error);
    if (slots[i].degenerate) {
      if (cfg.skip_policy == SkipPolicy::strict) {
        throw Error(ErrorCode::ZeroVectorAfterCentering, *slots[i].degenerate);
      }
      out.skipped.push_back({manifest.entries[i].label, *slots[i].degenerate});
      continue;
    }
    out.bundles.push_back(std::move(*slots[i].bundle));
  }
  return out;
}

CorpusBundles compute_pair_bundles(const DatasetManifest& a, const DatasetManifest& b,
                                   const CorpusConfig& cfg) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::ManifestMismatch, "manifests have " + std::to_string(a.size()) +
                                                 " and " + std::to_string(b.size()) + " entries");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.entries[i].label != b.entries[i].label) {
      throw Error(ErrorCode::ManifestMismatch,
                  "entry " + std::to_string(i) + " is labelled '" + a.entries[i].label +
                      "' in A but '" + b.entries[i].label + "' in B");
    }
  }

  const std::size_t n = a.size();
  std::vector<SlotResult> slots(2 * n);
  detail::parallel_for(2 * n, cfg.threads, [&](std::size_t i) {
    slots[i] = i < n ? compute_slot(a, i, cfg) : compute_slot(b, i - n, cfg);
  });

  CorpusBundles out;
  for (std::size_t i = 0; i < n; ++i) {
    SlotResult& sa = slots[i];
    SlotResult& sb = slots[n + i];
    if (sa.error) std::rethrow_exception(sa.error);
    if (sb.error) std::rethrow_exception(sb.error);
    if (sa.degenerate || sb.degenerate) {
      const std::string reason = sa.degenerate ? "model A: " + *sa.degenerate
                                               : "model B: " + *sb.degenerate;
      if (cfg.skip_policy == SkipPolicy::strict) {
        throw Error(ErrorCode::ZeroVectorAfterCentering, reason);
      }
      out.skipped.push_back({a.entries[i].label, reason});
      continue;
    }
    out.pairs.push_back({a.entries[i].label, std::move(*sa.bundle), std::move(*sb.bundle)});
  }
  return out;
}

ComparisonReport assemble_report(const CorpusBundles& bundles, const Weights& w,
                                 const CorpusConfig& cfg) {
  w.validate();
  if (bundles.pairs.empty()) {
    throw Error(ErrorCode::AllSequencesSkipped,
                std::to_string(bundles.skipped.size()) + " sequence(s) skipped, none left to compare");
  }
  ComparisonReport report;
  report.per_sequence.reserve(bundles.pairs.size());
  for (const auto& p : bundles.pairs) {
    report.per_sequence.push_back({p.label, p.a, p.b, score_pair(p.a, p.b, w)});
  }
  report.aggregate = {mean_scores(report.per_sequence), report.per_sequence.size()};
  report.weights_used = w;
  report.skipped = bundles.skipped;
  report.config = cfg;
  report.config_fingerprint = config_fingerprint(cfg, w);
  return report;
}

ComparisonReport compare_corpus(const DatasetManifest& a, const DatasetManifest& b,
                                const Weights& w, const CorpusConfig& cfg) {
  w.validate();
  return assemble_report(compute_pair_bundles(a, b, cfg), w, cfg);
}

std::vector<SweepRow> weight_sweep(const CorpusBundles& bundles, const std::vector<Weights>& grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "weight grid is empty");
  if (bundles.pairs.empty()) {
    throw Error(ErrorCode::AllSequencesSkipped, "no sequence pairs to sweep over");
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const Weights& w : grid) {
    w.validate();
    std::vector<SequenceComparison> scored;
    scored.reserve(bundles.pairs.size());
    for (const auto& p : bundles.pairs) scored.push_back({p.label, {}, {}, score_pair(p.a, p.b, w)});
    rows.push_back({w, {mean_scores(scored), scored.size()}});
  }
  return rows;
}

std::string config_fingerprint(const CorpusConfig& cfg, const Weights& w) {
  const MetricConfig& m = cfg.metrics;
  const std::string canonical =
      "k=" + to_string(m.k) + ";base=" + std::string(to_string(m.base)) +
      ";backend=" + std::string(to_string(m.backend)) +
      ";oversample=" + std::to_string(m.randomized.oversample) +
      ";power_iters=" + std::to_string(m.randomized.power_iters) +
      ";seed=" + std::to_string(m.randomized.seed) +
      ";skip_centering=" + (cfg.normalize.skip_centering ? "on" : "off") +
      ";skip_policy=" + std::string(to_string(cfg.skip_policy)) +
      ";w_entropy=" + format_double(w.w_entropy) + ";w_mnn=" + format_double(w.w_mnn) +
      ";delta_kind=" + std::string(to_string(w.delta_kind)) +
      ";normalize_terms=" + (w.normalize_terms ? "on" : "off");

  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace reprmetrics
