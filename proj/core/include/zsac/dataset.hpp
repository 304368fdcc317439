#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zsac/labels.hpp"
#include "zsac/types.hpp"

namespace zsac {

struct ManifestRecord {
  std::string sample_id;
  std::string label;
  std::string category;
  std::string embedding_id;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

/// Labeled samples. Sample ids are unique and each label belongs to exactly
/// one category.
class DatasetManifest {
 public:
  explicit DatasetManifest(std::vector<ManifestRecord> records);

  const std::vector<ManifestRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  /// Audio embedding dimension, known once embeddings have been resolved.
  std::optional<std::size_t> audio_dim() const noexcept { return d_x_; }
  void set_audio_dim(std::size_t d_x) noexcept { d_x_ = d_x; }

  /// Distinct labels and categories in order of first appearance.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& categories() const noexcept { return categories_; }

  const std::string& category_of(std::string_view label) const;
  std::vector<std::string> labels_in(std::string_view category) const;
  std::vector<LabelSpec> label_specs() const;

  const ManifestRecord* find(std::string_view sample_id) const;

  friend bool operator==(const DatasetManifest& a, const DatasetManifest& b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<ManifestRecord> records_;
  std::vector<std::string> labels_;
  std::vector<std::string> categories_;
  std::unordered_map<std::string, std::string> label_category_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::optional<std::size_t> d_x_;
};

/// Audio embeddings keyed by id, in file order, all of one dimension.
class EmbeddingStore {
 public:
  /// Throws DimensionError on a dimension change, ParameterError on a repeated id.
  void add(std::string id, EmbeddingVector vec);

  const EmbeddingVector* find(std::string_view id) const;
  /// Throws MissingEmbeddingError when absent.
  const EmbeddingVector& at(std::string_view id) const;

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  std::optional<std::size_t> dim() const noexcept { return dim_; }

 private:
  std::vector<std::string> ids_;
  std::vector<EmbeddingVector> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<std::size_t> dim_;
};

DatasetManifest parse_manifest(std::string_view content, const std::string& source = "<manifest>");
std::string format_manifest(const DatasetManifest& manifest);
void write_manifest(const DatasetManifest& manifest, const std::string& path);

/// JSONL lines of {"id", "frames": [[...], ...]} or {"id", "embedding": [...]}.
/// Frame-form entries are averaged on load.
EmbeddingStore parse_embeddings(std::string_view content,
                                const std::string& source = "<embeddings>");
EmbeddingStore load_embeddings(const std::string& path);
/// Writes the pre-aggregated form.
std::string format_embeddings(const EmbeddingStore& store);
void write_embeddings(const EmbeddingStore& store, const std::string& path);

struct LoadedDataset {
  DatasetManifest manifest;
  EmbeddingStore embeddings;
};

/// Loads both files and checks every manifest reference resolves.
LoadedDataset load_manifest(const std::string& manifest_path, const std::string& embeddings_path);

/// Same check for data already in memory; sets the manifest's audio dim.
void resolve_embeddings(DatasetManifest& manifest, const EmbeddingStore& embeddings);

}  // namespace zsac
