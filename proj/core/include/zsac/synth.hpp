#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "zsac/dataset.hpp"
#include "zsac/labels.hpp"
#include "zsac/types.hpp"
#include "zsac/word_vectors.hpp"

namespace zsac {

struct SynthParams {
  std::size_t n_classes = 50;
  std::size_t samples_per_class = 40;
  std::size_t d_x = 16;
  std::size_t d_y = 16;
  double noise_sigma = 0.05;
  std::uint64_t seed = 0;
  /// Consecutive classes are grouped into categories of this size.
  std::size_t classes_per_category = 10;
};

/// A corpus with a known audio/label relationship:
///   phi(y) ~ N(0, I),   theta = R phi(y) + noise_sigma * N(0, I)
/// with a fixed hidden map R whose entries are N(0, 1/d_y).
struct SynthCorpus {
  DatasetManifest manifest;
  EmbeddingStore embeddings;
  /// One single-token entry per class label.
  WordVectorTable word_vectors;
  std::vector<LabelSpec> labels;
  CompatibilityMatrix hidden_map;
};

/// Throws ParameterError for n_classes < 2, dims < 2, negative noise,
/// zero samples or zero category size.
SynthCorpus synth_dataset(const SynthParams& params);

struct SynthFiles {
  std::string manifest;
  std::string embeddings;
  std::string word_vectors;
  std::string labels;
};

/// Writes manifest.csv, embeddings.jsonl, vectors.txt and labels.csv into
/// `out_dir`, creating it if needed.
SynthFiles write_synth(const SynthCorpus& corpus, const std::string& out_dir);

}  // namespace zsac
