#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "zsac/types.hpp"

namespace zsac::testing {

inline CompatibilityMatrix to_matrix(const oracle::Mat& m) {
  std::vector<double> flat;
  for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
  return CompatibilityMatrix(m.size(), m.front().size(), std::move(flat));
}

inline ClassSet make_classes(const oracle::Mat& phis) {
  std::vector<LabeledClass> classes;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    classes.push_back({i, "c" + std::to_string(i), "cat", EmbeddingVector(phis[i])});
  }
  return ClassSet(phis.front().size(), std::move(classes));
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const noexcept { return path_; }
  std::string file(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

}  // namespace zsac::testing
