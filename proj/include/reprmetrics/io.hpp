#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace reprmetrics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class SourceDtype { float32, float64 };

// Raw n x d activations for one sequence: row i is the hidden state of token i.
// Always held in float64; the on-disk precision is only recorded.
class HiddenStateMatrix {
public:
  // Throws WrongRank for an empty shape and NonFinite for NaN/inf entries.
  HiddenStateMatrix(Matrix data, SourceDtype dtype_source = SourceDtype::float64,
                    std::string label = {});

  const Matrix& data() const noexcept { return data_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(data_.cols()); }
  SourceDtype dtype_source() const noexcept { return dtype_source_; }
  const std::string& label() const noexcept { return label_; }

private:
  Matrix data_;
  SourceDtype dtype_source_;
  std::string label_;
};

struct LoadOptions {
  std::size_t max_rows = 65536;
  std::size_t max_cols = 16384;
};

// Dispatches on extension: ".csv" is read as text, everything else as NPY.
HiddenStateMatrix load_matrix(const std::filesystem::path& path, const LoadOptions& opts = {});

HiddenStateMatrix load_npy(const std::filesystem::path& path, const LoadOptions& opts = {});
HiddenStateMatrix load_csv(const std::filesystem::path& path, const LoadOptions& opts = {});

// NPY v1.0, little-endian, C order. float32 output rounds each entry.
void write_npy(const std::filesystem::path& path, const Matrix& data,
               SourceDtype dtype = SourceDtype::float64);

struct ManifestEntry {
  std::filesystem::path path;
  std::string label;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::optional<std::size_t> expected_d;

  std::size_t size() const noexcept { return entries.size(); }
};

// One `<path>\t<label>` line per entry. Relative paths resolve against the
// manifest's directory. Blank lines are skipped, `#` starts a comment, and a
// `#expected_d=<int>` line pins the hidden width.
DatasetManifest load_manifest(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

// Loads entry `index` and checks it against expected_d when set.
HiddenStateMatrix load_entry(const DatasetManifest& manifest, std::size_t index,
                             const LoadOptions& opts = {});

}  // namespace reprmetrics
