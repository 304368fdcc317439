#include "zsac/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "zsac/error.hpp"

namespace zsac {
namespace {

void require_finite(std::span<const double> values, std::string_view what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ParameterError(fmt::format("{} has a non-finite entry at index {}", what, i));
    }
  }
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("embedding vector must have dim >= 1");
  require_finite(values_, "embedding vector");
}

EmbeddingVector::EmbeddingVector(std::initializer_list<double> values)
    : EmbeddingVector(std::vector<double>(values)) {}

EmbeddingVector l2_normalized(const EmbeddingVector& v) {
  const auto x = v.values();
  const double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
  if (norm == 0.0) return v;
  std::vector<double> out(x.begin(), x.end());
  for (double& e : out) e /= norm;
  return EmbeddingVector(std::move(out));
}

CompatibilityMatrix::CompatibilityMatrix(std::size_t rows, std::size_t cols,
                                         std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("compatibility matrix must be non-empty");
  if (data_.size() != rows_ * cols_) {
    throw DimensionError(fmt::format("compatibility matrix {}x{} needs {} entries, got {}", rows_,
                                     cols_, rows_ * cols_, data_.size()));
  }
  require_finite(data_, "compatibility matrix");
}

CompatibilityMatrix CompatibilityMatrix::zeros(std::size_t rows, std::size_t cols) {
  return CompatibilityMatrix(rows, cols, std::vector<double>(rows * cols, 0.0));
}

CompatibilityMatrix CompatibilityMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(n_rows * n_cols);
  for (const auto& row : rows) {
    if (row.size() != n_cols) throw DimensionError("ragged rows in matrix literal");
    data.insert(data.end(), row.begin(), row.end());
  }
  return CompatibilityMatrix(n_rows, n_cols, std::move(data));
}

bool CompatibilityMatrix::is_zero() const noexcept {
  for (double v : data_) {
    if (v != 0.0) return false;
  }
  return true;
}

void CompatibilityMatrix::add_outer(double alpha, std::span<const double> u,
                                    std::span<const double> v) {
  if (u.size() != rows_ || v.size() != cols_) {
    throw DimensionError(fmt::format("outer product {}x{} does not match matrix {}x{}", u.size(),
                                     v.size(), rows_, cols_));
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    const double s = alpha * u[r];
    if (s == 0.0) continue;
    double* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) row[c] += s * v[c];
  }
}

void CompatibilityMatrix::project(std::span<const double> theta, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double t = theta[r];
    if (t == 0.0) continue;
    const double* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) out[c] += t * row[c];
  }
}

ClassSet::ClassSet(std::size_t embedding_dim, std::vector<LabeledClass> classes)
    : dim_(embedding_dim), classes_(std::move(classes)) {
  if (dim_ == 0) throw DimensionError("class set embedding dim must be >= 1");
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& c = classes_[i];
    if (c.class_id != i) {
      throw ClassIndexError(
          fmt::format("class '{}' has id {} but sits at position {}", c.label, c.class_id, i));
    }
    if (c.embedding.dim() != dim_) {
      throw DimensionError(fmt::format("class '{}' embedding has dim {}, class set expects {}",
                                       c.label, c.embedding.dim(), dim_));
    }
  }
}

const LabeledClass& ClassSet::at(std::size_t id) const {
  if (id >= classes_.size()) {
    throw ClassIndexError(
        fmt::format("class id {} out of range for class set of size {}", id, classes_.size()));
  }
  return classes_[id];
}

std::optional<std::size_t> ClassSet::find(std::string_view label) const {
  for (const auto& c : classes_) {
    if (c.label == label) return c.class_id;
  }
  return std::nullopt;
}

ClassSet ClassSet::subset(std::span<const std::string> labels) const {
  std::vector<LabeledClass> picked;
  picked.reserve(labels.size());
  for (const auto& label : labels) {
    const auto id = find(label);
    if (!id) throw ClassIndexError(fmt::format("class '{}' not in class set", label));
    LabeledClass c = classes_[*id];
    c.class_id = picked.size();
    picked.push_back(std::move(c));
  }
  return ClassSet(dim_, std::move(picked));
}

void TrainingConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError(fmt::format("learning rate must be positive, got {}", eta));
  }
}

std::string_view to_string(SortOrder order) noexcept {
  return order == SortOrder::kDescending ? "descending" : "ascending";
}

std::optional<SortOrder> parse_sort_order(std::string_view text) noexcept {
  if (text == "descending") return SortOrder::kDescending;
  if (text == "ascending") return SortOrder::kAscending;
  return std::nullopt;
}

}  // namespace zsac
