#pragma once

#include "reprmetrics/comparison.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reprmetrics {

// "%.17g" rendering; non-finite values become the JSON literal null.
std::string format_double(double v);

// Minimal streaming JSON emitter with two-space indentation and fixed
// 17-significant-digit floats, so equal inputs always produce equal bytes.
class JsonWriter {
public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(bool v);

  // Returns the document with a trailing newline.
  std::string str() const { return out_ + "\n"; }

private:
  void before_value();
  void newline();
  void write_string(std::string_view v);

  struct Level {
    bool is_object;
    bool empty = true;
  };
  std::string out_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

inline constexpr std::string_view kSchemaVersion = "1";

std::string to_json(const ComparisonReport& report);

// Single-model report: per-sequence bundles plus their field-wise means.
std::string to_json(const CorpusMetrics& metrics, const CorpusConfig& cfg);

// Header `w_entropy,w_mnn,delta_kind,normalize_terms,aggregate_<fields>...,count`.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace reprmetrics
