#pragma once

#include "reprmetrics/io.hpp"

#include <string>

namespace reprmetrics {

// Rows with post-centering L2 norm at or below this are treated as degenerate.
inline constexpr double kZeroRowEpsilon = 1e-12;

struct CenteredStates {
  Matrix data;  // each row minus the token mean
  Vector mean;  // the subtracted mean, length d
};

// Unit-row hidden states. Column means are not zero in general; only the
// intermediate CenteredStates is mean-free.
class NormalizedStates {
public:
  const Matrix& data() const noexcept { return data_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(data_.cols()); }
  const std::string& source_label() const noexcept { return source_label_; }
  const Vector& centered_mean() const noexcept { return centered_mean_; }

private:
  friend NormalizedStates l2_normalize_rows(const Matrix&, std::string, Vector);

  NormalizedStates(Matrix data, std::string label, Vector mean)
      : data_(std::move(data)), source_label_(std::move(label)), centered_mean_(std::move(mean)) {}

  Matrix data_;
  std::string source_label_;
  Vector centered_mean_;
};

CenteredStates mean_center(const HiddenStateMatrix& m);

// Divides every row by its L2 norm. Throws ZeroVectorError naming the first
// row whose norm is <= kZeroRowEpsilon. `mean` is recorded as centered_mean and
// defaults to zeros when empty.
NormalizedStates l2_normalize_rows(const Matrix& centered, std::string label = {},
                                   Vector mean = {});

struct NormalizeOptions {
  bool skip_centering = false;
};

NormalizedStates normalize(const HiddenStateMatrix& m, const NormalizeOptions& opts = {});

}  // namespace reprmetrics
