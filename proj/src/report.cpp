#include "reprmetrics/report.hpp"

#include <cmath>
#include <cstdio>

namespace reprmetrics {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::newline() {
  out_.push_back('\n');
  out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (!stack_.back().empty) out_.push_back(',');
    stack_.back().empty = false;
    newline();
  }
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_.push_back('{');
  stack_.push_back({true});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool empty = stack_.back().empty;
  stack_.pop_back();
  if (!empty) newline();
  out_.push_back('}');
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_.push_back('[');
  stack_.push_back({false});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool empty = stack_.back().empty;
  stack_.pop_back();
  if (!empty) newline();
  out_.push_back(']');
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  before_value();
  write_string(k);
  out_ += ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  before_value();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  before_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  write_string(v);
  return *this;
}

void JsonWriter::write_string(std::string_view v) {
  out_.push_back('"');
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\r': out_ += "\\r"; break;
      case '\t': out_ += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out_ += buf;
        } else {
          out_.push_back(c);
        }
    }
  }
  out_.push_back('"');
}

namespace {

void write_metric_config(JsonWriter& j, const CorpusConfig& cfg) {
  const MetricConfig& m = cfg.metrics;
  j.key("k").value(to_string(m.k));
  j.key("backend").value(to_string(m.backend));
  j.key("base").value(to_string(m.base));
  j.key("oversample").value(static_cast<std::uint64_t>(m.randomized.oversample));
  j.key("power_iters").value(static_cast<std::uint64_t>(m.randomized.power_iters));
  j.key("seed").value(static_cast<std::uint64_t>(m.randomized.seed));
  j.key("skip_centering").value(cfg.normalize.skip_centering);
  j.key("skip_policy").value(to_string(cfg.skip_policy));
}

void write_bundle(JsonWriter& j, const MetricBundle& b) {
  j.begin_object();
  j.key("label").value(b.label);
  j.key("n_tokens").value(static_cast<std::uint64_t>(b.n_tokens));
  j.key("hidden_dim").value(static_cast<std::uint64_t>(b.hidden_dim));
  j.key("k_used").value(static_cast<std::uint64_t>(b.k_used));
  j.key("entropy_nats").value(b.entropy_nats);
  j.key("entropy_bits").value(b.entropy_bits);
  j.key("effective_rank").value(b.effective_rank);
  j.key("mnn_hidden").value(b.mnn_hidden);
  j.key("mnn_covariance").value(b.mnn_covariance);
  j.end_object();
}

void write_scores(JsonWriter& j, const PairScore& s) {
  j.key("delta_entropy").value(s.delta_entropy);
  j.key("delta_erank").value(s.delta_erank);
  j.key("delta_mnn").value(s.delta_mnn);
  j.key("term_primary").value(s.term_primary);
  j.key("term_mnn").value(s.term_mnn);
  j.key("composite").value(s.composite);
}

void write_skipped(JsonWriter& j, const std::vector<SkippedSequence>& skipped) {
  j.key("skipped").begin_array();
  for (const auto& s : skipped) {
    j.begin_object();
    j.key("label").value(s.label);
    j.key("reason").value(s.reason);
    j.end_object();
  }
  j.end_array();
}

}  // namespace

std::string to_json(const ComparisonReport& report) {
  JsonWriter j;
  j.begin_object();
  j.key("schema_version").value(kSchemaVersion);

  const Weights& w = report.weights_used;
  j.key("weights").begin_object();
  j.key("w_entropy").value(w.w_entropy);
  j.key("w_mnn").value(w.w_mnn);
  j.key("delta_kind").value(to_string(w.delta_kind));
  j.key("normalize_terms").value(w.normalize_terms);
  j.end_object();

  j.key("config").begin_object();
  write_metric_config(j, report.config);
  j.key("fingerprint").value(report.config_fingerprint);
  j.end_object();

  j.key("per_sequence").begin_array();
  for (const auto& row : report.per_sequence) {
    j.begin_object();
    j.key("label").value(row.label);
    j.key("bundle_a");
    write_bundle(j, row.bundle_a);
    j.key("bundle_b");
    write_bundle(j, row.bundle_b);
    write_scores(j, row.score);
    j.end_object();
  }
  j.end_array();

  j.key("aggregate").begin_object();
  j.key("count").value(static_cast<std::uint64_t>(report.aggregate.count));
  write_scores(j, report.aggregate.mean);
  j.end_object();

  write_skipped(j, report.skipped);
  j.end_object();
  return j.str();
}

std::string to_json(const CorpusMetrics& metrics, const CorpusConfig& cfg) {
  JsonWriter j;
  j.begin_object();
  j.key("schema_version").value(kSchemaVersion);
  j.key("config").begin_object();
  write_metric_config(j, cfg);
  j.end_object();

  j.key("per_sequence").begin_array();
  for (const auto& b : metrics.bundles) write_bundle(j, b);
  j.end_array();

  j.key("aggregate").begin_object();
  const double n = static_cast<double>(metrics.bundles.size());
  double entropy_nats = 0, entropy_bits = 0, erank = 0, mnn_h = 0, mnn_c = 0;
  for (const auto& b : metrics.bundles) {
    entropy_nats += b.entropy_nats;
    entropy_bits += b.entropy_bits;
    erank += b.effective_rank;
    mnn_h += b.mnn_hidden;
    mnn_c += b.mnn_covariance;
  }
  j.key("count").value(static_cast<std::uint64_t>(metrics.bundles.size()));
  if (!metrics.bundles.empty()) {
    j.key("entropy_nats").value(entropy_nats / n);
    j.key("entropy_bits").value(entropy_bits / n);
    j.key("effective_rank").value(erank / n);
    j.key("mnn_hidden").value(mnn_h / n);
    j.key("mnn_covariance").value(mnn_c / n);
  }
  j.end_object();

  write_skipped(j, metrics.skipped);
  j.end_object();
  return j.str();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "w_entropy,w_mnn,delta_kind,normalize_terms,aggregate_delta_entropy,aggregate_delta_erank,"
      "aggregate_delta_mnn,aggregate_term_primary,aggregate_term_mnn,aggregate_composite,count\n";
  for (const auto& r : rows) {
    const PairScore& m = r.aggregate.mean;
    out += format_double(r.weights.w_entropy) + "," + format_double(r.weights.w_mnn) + "," +
           std::string(to_string(r.weights.delta_kind)) + "," +
           (r.weights.normalize_terms ? "on" : "off") + "," + format_double(m.delta_entropy) +
           "," + format_double(m.delta_erank) + "," + format_double(m.delta_mnn) + "," +
           format_double(m.term_primary) + "," + format_double(m.term_mnn) + "," +
           format_double(m.composite) + "," + std::to_string(r.aggregate.count) + "\n";
  }
  return out;
}

}  // namespace reprmetrics
