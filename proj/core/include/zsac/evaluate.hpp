#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zsac/dataset.hpp"
#include "zsac/plan.hpp"
#include "zsac/types.hpp"

namespace zsac {

/// Rows are true classes, columns predicted classes, both in test class order.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

  std::size_t at(std::size_t truth, std::size_t predicted) const;
  void add(std::size_t truth, std::size_t predicted);

  std::size_t row_total(std::size_t truth) const;
  std::size_t total() const noexcept;
  std::size_t correct() const noexcept;
  /// 100 * correct / total; 0 for an empty matrix.
  double accuracy_percent() const noexcept;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> counts_;
};

struct RunResult {
  std::string label;
  std::string evaluation_category;
  std::vector<std::string> training_categories;
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  /// Rank-weighted risk of the trained matrix on its training data.
  double final_risk = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix confusion;
};

struct AccuracyReport {
  Setting setting;
  std::uint64_t seed = 0;
  TrainingConfig config;
  bool normalize = false;
  std::string description;
  std::vector<RunResult> runs;

  /// Mean accuracy over runs.
  double aggregate() const noexcept;
  /// Mean accuracy per evaluation category, in order of first appearance.
  std::vector<std::pair<std::string, double>> by_evaluation_category() const;
};

struct EvalOptions {
  TrainingConfig training;
  /// L2-normalize audio and label embeddings before training and prediction.
  bool normalize = false;
  /// Runs executed concurrently. Results do not depend on this.
  std::size_t jobs = 1;
};

/// Trains one model per run on its training classes, then predicts each test
/// sample among the run's test classes only.
///
/// `class_source` supplies a label embedding for every label the plan names.
AccuracyReport run_plan(const EvaluationPlan& plan, const DatasetManifest& manifest,
                        const EmbeddingStore& embeddings, const ClassSet& class_source,
                        const EvalOptions& options);

/// Training samples for the given ids, labeled against `classes`.
TrainingSet build_training_set(const std::vector<std::string>& sample_ids,
                               const DatasetManifest& manifest, const EmbeddingStore& embeddings,
                               const ClassSet& classes, bool normalize = false);

/// The class set restricted and re-indexed to `labels`, optionally normalized.
ClassSet select_classes(const ClassSet& source, const std::vector<std::string>& labels,
                        bool normalize = false);

}  // namespace zsac
