#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zsac {

/// Dense real-valued embedding. Always non-empty with finite entries.
class EmbeddingVector {
 public:
  explicit EmbeddingVector(std::vector<double> values);
  EmbeddingVector(std::initializer_list<double> values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

/// Returns `v / ||v||_2`; a zero vector is returned unchanged.
EmbeddingVector l2_normalized(const EmbeddingVector& v);

/// The d_x x d_y bilinear parameter matrix, stored row-major.
class CompatibilityMatrix {
 public:
  CompatibilityMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static CompatibilityMatrix zeros(std::size_t rows, std::size_t cols);
  static CompatibilityMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<const double> data() const noexcept { return data_; }

  bool is_zero() const noexcept;

  /// W += alpha * u v^T
  void add_outer(double alpha, std::span<const double> u, std::span<const double> v);

  /// Writes W^T theta into `out` (length cols).
  void project(std::span<const double> theta, std::span<double> out) const;

  friend bool operator==(const CompatibilityMatrix&, const CompatibilityMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct LabeledClass {
  std::size_t class_id;
  std::string label;
  std::string category;
  EmbeddingVector embedding;
};

/// Ordered candidate classes. class_id always equals the position in the set.
class ClassSet {
 public:
  ClassSet(std::size_t embedding_dim, std::vector<LabeledClass> classes);

  std::size_t size() const noexcept { return classes_.size(); }
  bool empty() const noexcept { return classes_.empty(); }
  std::size_t embedding_dim() const noexcept { return dim_; }

  const LabeledClass& operator[](std::size_t id) const noexcept { return classes_[id]; }
  /// Bounds-checked access; throws ClassIndexError.
  const LabeledClass& at(std::size_t id) const;

  auto begin() const noexcept { return classes_.begin(); }
  auto end() const noexcept { return classes_.end(); }

  std::optional<std::size_t> find(std::string_view label) const;

  /// New set holding the named classes in the given order, re-indexed from 0.
  ClassSet subset(std::span<const std::string> labels) const;

 private:
  std::size_t dim_;
  std::vector<LabeledClass> classes_;
};

struct TrainingSample {
  EmbeddingVector theta;
  std::size_t class_id;
};

using TrainingSet = std::vector<TrainingSample>;

enum class SortOrder { kDescending, kAscending };

struct TrainingConfig {
  double eta = 0.01;
  std::size_t epochs = 50;
  std::uint64_t seed = 0;
  SortOrder sort_order = SortOrder::kDescending;
  bool shuffle_samples = false;

  /// Throws ParameterError when eta is not a positive finite number.
  void validate() const;
};

std::string_view to_string(SortOrder order) noexcept;
std::optional<SortOrder> parse_sort_order(std::string_view text) noexcept;

}  // namespace zsac
