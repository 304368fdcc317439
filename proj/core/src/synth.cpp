#include "zsac/synth.hpp"

#include <cmath>
#include <filesystem>

#include <fmt/format.h>

#include "zsac/error.hpp"
#include "zsac/rng.hpp"

namespace zsac {
namespace {

void check(const SynthParams& p) {
  if (p.n_classes < 2) throw ParameterError(fmt::format("need at least 2 classes, got {}", p.n_classes));
  if (p.samples_per_class < 1) throw ParameterError("samples_per_class must be >= 1");
  if (p.d_x < 2 || p.d_y < 2) {
    throw ParameterError(fmt::format("dimensions must be >= 2, got d_x={} d_y={}", p.d_x, p.d_y));
  }
  if (!(p.noise_sigma >= 0.0) || !std::isfinite(p.noise_sigma)) {
    throw ParameterError(fmt::format("noise_sigma must be >= 0, got {}", p.noise_sigma));
  }
  if (p.classes_per_category < 1) throw ParameterError("classes_per_category must be >= 1");
}

}  // namespace

SynthCorpus synth_dataset(const SynthParams& p) {
  check(p);
  Rng rng(p.seed);

  const int label_width = p.n_classes > 100 ? static_cast<int>(std::to_string(p.n_classes - 1).size()) : 2;
  WordVectorTable table(p.d_y);
  std::vector<LabelSpec> labels;
  std::vector<std::vector<double>> phi(p.n_classes, std::vector<double>(p.d_y));
  for (std::size_t c = 0; c < p.n_classes; ++c) {
    for (double& v : phi[c]) v = rng.normal();
    LabelSpec spec{fmt::format("class{:0{}}", c, label_width),
                   fmt::format("category{}", c / p.classes_per_category + 1)};
    table.insert(spec.label, EmbeddingVector(phi[c]));
    labels.push_back(std::move(spec));
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(p.d_y));
  std::vector<double> r(p.d_x * p.d_y);
  for (double& v : r) v = scale * rng.normal();
  CompatibilityMatrix hidden(p.d_x, p.d_y, r);

  const std::size_t total = p.n_classes * p.samples_per_class;
  const int id_width = static_cast<int>(std::max<std::size_t>(4, std::to_string(total - 1).size()));
  std::vector<ManifestRecord> records;
  records.reserve(total);
  EmbeddingStore store;
  std::size_t n = 0;
  for (std::size_t c = 0; c < p.n_classes; ++c) {
    for (std::size_t s = 0; s < p.samples_per_class; ++s, ++n) {
      std::vector<double> theta(p.d_x);
      for (std::size_t i = 0; i < p.d_x; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < p.d_y; ++j) acc += r[i * p.d_y + j] * phi[c][j];
        theta[i] = acc;
      }
      if (p.noise_sigma > 0.0) {
        for (double& v : theta) v += p.noise_sigma * rng.normal();
      }
      std::string id = fmt::format("s{:0{}}", n, id_width);
      records.push_back({id, labels[c].label, labels[c].category, id});
      store.add(std::move(id), EmbeddingVector(std::move(theta)));
    }
  }

  DatasetManifest manifest(std::move(records));
  resolve_embeddings(manifest, store);
  return {std::move(manifest), std::move(store), std::move(table), std::move(labels),
          std::move(hidden)};
}

SynthFiles write_synth(const SynthCorpus& corpus, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", out_dir, ec.message()));
  const fs::path dir(out_dir);
  SynthFiles files{(dir / "manifest.csv").string(), (dir / "embeddings.jsonl").string(),
                   (dir / "vectors.txt").string(), (dir / "labels.csv").string()};
  write_manifest(corpus.manifest, files.manifest);
  write_embeddings(corpus.embeddings, files.embeddings);
  write_word_vectors(corpus.word_vectors, files.word_vectors);
  write_label_list(corpus.labels, files.labels);
  return files;
}

}  // namespace zsac
