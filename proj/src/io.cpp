#include "reprmetrics/io.hpp"

#include "reprmetrics/error.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <regex>
#include <set>
#include <sstream>

namespace reprmetrics {

static_assert(std::endian::native == std::endian::little,
              "NPY payloads are decoded with memcpy on a little-endian host");

namespace {

constexpr char kNpyMagic[] = "\x93NUMPY";
constexpr std::size_t kNpyMagicLen = 6;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::FileUnreadable, "cannot open '" + path.string() + "'");
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorCode::FileUnreadable, "read failed for '" + path.string() + "'");
  }
  return bytes;
}

void check_finite(const Matrix& data, const std::string& where) {
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      if (!std::isfinite(data(i, j))) {
        throw NonFiniteError(static_cast<std::size_t>(i), static_cast<std::size_t>(j), where);
      }
    }
  }
}

void check_cap(std::size_t rows, std::size_t cols, const LoadOptions& opts,
               const std::filesystem::path& path) {
  if (rows > opts.max_rows || cols > opts.max_cols) {
    throw Error(ErrorCode::MatrixTooLarge,
                "'" + path.string() + "' has shape (" + std::to_string(rows) + ", " +
                    std::to_string(cols) + "), cap is (" + std::to_string(opts.max_rows) + ", " +
                    std::to_string(opts.max_cols) + ")");
  }
}

struct NpyHeader {
  SourceDtype dtype;
  std::vector<std::size_t> shape;
};

NpyHeader parse_npy_header(const std::string& header, const std::filesystem::path& path) {
  auto malformed = [&](const std::string& why) {
    return Error(ErrorCode::MalformedHeader, "'" + path.string() + "': " + why);
  };

  static const std::regex descr_re(R"('descr'\s*:\s*'([^']*)')");
  static const std::regex fortran_re(R"('fortran_order'\s*:\s*(True|False))");
  static const std::regex shape_re(R"('shape'\s*:\s*\(([^)]*)\))");

  std::smatch m;
  NpyHeader out{};
  if (!std::regex_search(header, m, descr_re)) throw malformed("missing descr");
  if (m[1] == "<f8") {
    out.dtype = SourceDtype::float64;
  } else if (m[1] == "<f4") {
    out.dtype = SourceDtype::float32;
  } else {
    throw malformed("unsupported dtype '" + m[1].str() + "'");
  }

  if (!std::regex_search(header, m, fortran_re)) throw malformed("missing fortran_order");
  if (m[1] == "True") throw malformed("Fortran-order arrays are not supported");

  if (!std::regex_search(header, m, shape_re)) throw malformed("missing shape");
  const std::string dims = m[1].str();
  std::size_t pos = 0;
  while (pos < dims.size()) {
    while (pos < dims.size() && (dims[pos] == ' ' || dims[pos] == ',')) ++pos;
    if (pos >= dims.size()) break;
    std::size_t value = 0;
    auto [next, ec] = std::from_chars(dims.data() + pos, dims.data() + dims.size(), value);
    if (ec != std::errc{}) throw malformed("bad shape entry in '" + dims + "'");
    out.shape.push_back(value);
    pos = static_cast<std::size_t>(next - dims.data());
  }
  return out;
}

}  // namespace

HiddenStateMatrix::HiddenStateMatrix(Matrix data, SourceDtype dtype_source, std::string label)
    : data_(std::move(data)), dtype_source_(dtype_source), label_(std::move(label)) {
  if (data_.rows() < 1 || data_.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "hidden-state matrix '" + label_ + "' is empty");
  }
  check_finite(data_, "'" + label_ + "'");
}

HiddenStateMatrix load_npy(const std::filesystem::path& path, const LoadOptions& opts) {
  const std::string bytes = read_file(path);
  auto malformed = [&](const std::string& why) {
    return Error(ErrorCode::MalformedHeader, "'" + path.string() + "': " + why);
  };

  if (bytes.size() < 10 || std::memcmp(bytes.data(), kNpyMagic, kNpyMagicLen) != 0) {
    throw malformed("missing NPY magic");
  }
  if (bytes[6] != 1 || bytes[7] != 0) {
    throw malformed("only NPY version 1.0 is supported");
  }
  const auto header_len = static_cast<std::size_t>(static_cast<unsigned char>(bytes[8])) |
                          (static_cast<std::size_t>(static_cast<unsigned char>(bytes[9])) << 8);
  if (10 + header_len > bytes.size()) throw malformed("header length exceeds file size");

  const NpyHeader header = parse_npy_header(bytes.substr(10, header_len), path);
  if (header.shape.size() != 2) {
    throw Error(ErrorCode::WrongRank, "'" + path.string() + "' is " +
                                          std::to_string(header.shape.size()) +
                                          "-D, expected 2-D");
  }
  const std::size_t rows = header.shape[0];
  const std::size_t cols = header.shape[1];
  if (rows == 0 || cols == 0) throw malformed("shape has a zero extent");
  check_cap(rows, cols, opts, path);

  const std::size_t item = header.dtype == SourceDtype::float64 ? 8 : 4;
  const std::size_t payload = bytes.size() - 10 - header_len;
  if (payload != rows * cols * item) {
    throw malformed("payload holds " + std::to_string(payload) + " bytes, shape needs " +
                    std::to_string(rows * cols * item));
  }

  Matrix data(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const char* p = bytes.data() + 10 + header_len;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j, p += item) {
      double v;
      if (item == 8) {
        std::memcpy(&v, p, 8);
      } else {
        float f;
        std::memcpy(&f, p, 4);
        v = f;
      }
      data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  check_finite(data, "'" + path.string() + "'");
  return HiddenStateMatrix(std::move(data), header.dtype, path.stem().string());
}

HiddenStateMatrix load_csv(const std::filesystem::path& path, const LoadOptions& opts) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      std::string field = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start);
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      field = b == std::string::npos ? std::string{} : field.substr(b, e - b + 1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(ErrorCode::MalformedHeader, "'" + path.string() + "' line " +
                                                    std::to_string(line_no) +
                                                    ": cannot parse '" + field + "'");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::MalformedHeader, "'" + path.string() + "' line " +
                                                  std::to_string(line_no) + " has " +
                                                  std::to_string(row.size()) + " columns, expected " +
                                                  std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::MalformedHeader, "'" + path.string() + "' is empty");
  check_cap(rows.size(), rows.front().size(), opts, path);

  Matrix data(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  check_finite(data, "'" + path.string() + "'");
  return HiddenStateMatrix(std::move(data), SourceDtype::float64, path.stem().string());
}

HiddenStateMatrix load_matrix(const std::filesystem::path& path, const LoadOptions& opts) {
  if (path.extension() == ".csv") return load_csv(path, opts);
  return load_npy(path, opts);
}

void write_npy(const std::filesystem::path& path, const Matrix& data, SourceDtype dtype) {
  std::string header = std::string("{'descr': '") +
                       (dtype == SourceDtype::float64 ? "<f8" : "<f4") +
                       "', 'fortran_order': False, 'shape': (" + std::to_string(data.rows()) +
                       ", " + std::to_string(data.cols()) + "), }";
  // Pad so the payload starts on a 64-byte boundary, newline-terminated.
  const std::size_t unpadded = 10 + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileUnreadable, "cannot write '" + path.string() + "'");
  out.write(kNpyMagic, kNpyMagicLen);
  const char version[2] = {1, 0};
  out.write(version, 2);
  const auto len = static_cast<std::uint16_t>(header.size());
  const char len_bytes[2] = {static_cast<char>(len & 0xff), static_cast<char>(len >> 8)};
  out.write(len_bytes, 2);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      if (dtype == SourceDtype::float64) {
        const double v = data(i, j);
        out.write(reinterpret_cast<const char*>(&v), 8);
      } else {
        const auto v = static_cast<float>(data(i, j));
        out.write(reinterpret_cast<const char*>(&v), 4);
      }
    }
  }
  if (!out) throw Error(ErrorCode::FileUnreadable, "write failed for '" + path.string() + "'");
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const std::filesystem::path base = path.parent_path();

  DatasetManifest manifest;
  std::set<std::filesystem::path> seen;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') {
      constexpr std::string_view directive = "#expected_d=";
      if (line.rfind(directive, 0) == 0) {
        std::size_t d = 0;
        const char* first = line.data() + directive.size();
        auto [ptr, ec] = std::from_chars(first, line.data() + line.size(), d);
        if (ec != std::errc{} || ptr != line.data() + line.size() || d == 0) {
          throw Error(ErrorCode::InvalidArgument,
                      "'" + path.string() + "' line " + std::to_string(line_no) +
                          ": bad expected_d directive");
        }
        manifest.expected_d = d;
      }
      continue;
    }

    const std::size_t tab = line.find('\t');
    std::filesystem::path entry_path = line.substr(0, tab);
    std::string label = tab == std::string::npos ? entry_path.string() : line.substr(tab + 1);
    if (entry_path.is_relative()) entry_path = base / entry_path;
    entry_path = entry_path.lexically_normal();

    if (!seen.insert(entry_path).second) {
      throw Error(ErrorCode::DuplicateEntry, "'" + path.string() + "' lists '" +
                                                 entry_path.string() + "' more than once");
    }
    manifest.entries.push_back({std::move(entry_path), std::move(label)});
  }
  if (manifest.entries.empty()) {
    throw Error(ErrorCode::EmptyManifest, "'" + path.string() + "' has no entries");
  }
  return manifest;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::FileUnreadable, "cannot write '" + path.string() + "'");
  if (manifest.expected_d) out << "#expected_d=" << *manifest.expected_d << '\n';
  for (const auto& e : manifest.entries) out << e.path.string() << '\t' << e.label << '\n';
}

HiddenStateMatrix load_entry(const DatasetManifest& manifest, std::size_t index,
                             const LoadOptions& opts) {
  const ManifestEntry& entry = manifest.entries.at(index);
  HiddenStateMatrix loaded = load_matrix(entry.path, opts);
  if (manifest.expected_d && loaded.cols() != *manifest.expected_d) {
    throw Error(ErrorCode::DimensionMismatch,
                "'" + entry.path.string() + "' has d=" + std::to_string(loaded.cols()) +
                    ", manifest expects " + std::to_string(*manifest.expected_d));
  }
  return HiddenStateMatrix(loaded.data(), loaded.dtype_source(), entry.label);
}

}  // namespace reprmetrics
