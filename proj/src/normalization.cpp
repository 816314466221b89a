#include "reprmetrics/normalization.hpp"

#include "reprmetrics/error.hpp"

namespace reprmetrics {

CenteredStates mean_center(const HiddenStateMatrix& m) {
  const Matrix& h = m.data();
  Vector mean = h.colwise().mean().transpose();
  Matrix centered = h.rowwise() - mean.transpose();
  return {std::move(centered), std::move(mean)};
}

NormalizedStates l2_normalize_rows(const Matrix& centered, std::string label, Vector mean) {
  if (mean.size() == 0) mean = Vector::Zero(centered.cols());
  Matrix out(centered.rows(), centered.cols());
  for (Eigen::Index i = 0; i < centered.rows(); ++i) {
    const double norm = centered.row(i).norm();
    if (!(norm > kZeroRowEpsilon)) {
      throw ZeroVectorError(static_cast<std::size_t>(i), label);
    }
    out.row(i) = centered.row(i) / norm;
  }
  return NormalizedStates(std::move(out), std::move(label), std::move(mean));
}

NormalizedStates normalize(const HiddenStateMatrix& m, const NormalizeOptions& opts) {
  if (opts.skip_centering) return l2_normalize_rows(m.data(), m.label());
  CenteredStates c = mean_center(m);
  return l2_normalize_rows(c.data, m.label(), std::move(c.mean));
}

}  // namespace reprmetrics
