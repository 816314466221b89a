#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reprmetrics {

enum class ErrorCode {
  FileUnreadable,
  MalformedHeader,
  NonFinite,
  WrongRank,
  MatrixTooLarge,
  DimensionMismatch,
  DuplicateEntry,
  EmptyManifest,
  ZeroVectorAfterCentering,
  ConvergenceFailure,
  InternalConsistency,
  KOutOfRange,
  AllZeroSpectrum,
  ConfigMismatch,
  InvalidWeights,
  ManifestMismatch,
  AllSequencesSkipped,
  NotSymmetric,
  NoConvergence,
  DimensionTooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the
// message is prefixed with the code name so CLI output stays greppable.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class NonFiniteError : public Error {
public:
  NonFiniteError(std::size_t row, std::size_t col, const std::string& where);

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

private:
  std::size_t row_;
  std::size_t col_;
};

class ZeroVectorError : public Error {
public:
  ZeroVectorError(std::size_t row, const std::string& label);

  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

}  // namespace reprmetrics
