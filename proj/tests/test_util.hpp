#pragma once

#include "reprmetrics/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace reprmetrics::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    std::string name = "reprmetrics_";
    if (info) name += std::string(info->test_suite_name()) + "_" + info->name();
    std::replace(name.begin(), name.end(), '/', '_');
    path_ = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  EXPECT_EQ(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Generator for property tests: seeded dimensions, scales and offsets.
struct RandomCase {
  std::size_t n;
  std::size_t d;
  Matrix m;
};

inline RandomCase random_case(std::mt19937_64& rng, std::size_t max_n = 64, std::size_t max_d = 64) {
  std::uniform_int_distribution<std::size_t> dn(2, max_n);
  std::uniform_int_distribution<std::size_t> dd(2, max_d);
  std::normal_distribution<double> g(0.0, 1.0);
  RandomCase c{dn(rng), dd(rng), {}};
  c.m.resize(static_cast<Eigen::Index>(c.n), static_cast<Eigen::Index>(c.d));
  for (Eigen::Index i = 0; i < c.m.size(); ++i) c.m.data()[i] = g(rng);
  return c;
}

}  // namespace reprmetrics::testing
