#include "zsac/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "log.hpp"
#include "zsac/error.hpp"
#include "zsac/model.hpp"

namespace zsac {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {}

std::size_t ConfusionMatrix::at(std::size_t truth, std::size_t predicted) const {
  if (truth >= size() || predicted >= size()) throw ClassIndexError("confusion index out of range");
  return counts_[truth * size() + predicted];
}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted) {
  if (truth >= size() || predicted >= size()) throw ClassIndexError("confusion index out of range");
  ++counts_[truth * size() + predicted];
}

std::size_t ConfusionMatrix::row_total(std::size_t truth) const {
  std::size_t sum = 0;
  for (std::size_t p = 0; p < size(); ++p) sum += at(truth, p);
  return sum;
}

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t sum = 0;
  for (auto c : counts_) sum += c;
  return sum;
}

std::size_t ConfusionMatrix::correct() const noexcept {
  std::size_t sum = 0;
  for (std::size_t i = 0; i < size(); ++i) sum += counts_[i * size() + i];
  return sum;
}

double ConfusionMatrix::accuracy_percent() const noexcept {
  const auto n = total();
  return n == 0 ? 0.0 : 100.0 * static_cast<double>(correct()) / static_cast<double>(n);
}

double AccuracyReport::aggregate() const noexcept {
  if (runs.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : runs) sum += r.accuracy;
  return sum / static_cast<double>(runs.size());
}

std::vector<std::pair<std::string, double>> AccuracyReport::by_evaluation_category() const {
  std::vector<std::pair<std::string, double>> sums;
  std::vector<std::size_t> counts;
  for (const auto& r : runs) {
    auto it = std::find_if(sums.begin(), sums.end(),
                           [&](const auto& p) { return p.first == r.evaluation_category; });
    if (it == sums.end()) {
      sums.emplace_back(r.evaluation_category, 0.0);
      counts.push_back(0);
      it = sums.end() - 1;
    }
    it->second += r.accuracy;
    ++counts[static_cast<std::size_t>(it - sums.begin())];
  }
  for (std::size_t i = 0; i < sums.size(); ++i) sums[i].second /= static_cast<double>(counts[i]);
  return sums;
}

ClassSet select_classes(const ClassSet& source, const std::vector<std::string>& labels,
                        bool normalize) {
  ClassSet picked = source.subset(labels);
  if (!normalize) return picked;
  std::vector<LabeledClass> classes;
  for (const auto& c : picked) {
    classes.push_back({c.class_id, c.label, c.category, l2_normalized(c.embedding)});
  }
  return ClassSet(picked.embedding_dim(), std::move(classes));
}

TrainingSet build_training_set(const std::vector<std::string>& sample_ids,
                               const DatasetManifest& manifest, const EmbeddingStore& embeddings,
                               const ClassSet& classes, bool normalize) {
  TrainingSet out;
  out.reserve(sample_ids.size());
  for (const auto& id : sample_ids) {
    const ManifestRecord* record = manifest.find(id);
    if (record == nullptr) throw ClassIndexError(fmt::format("sample '{}' not in manifest", id));
    const EmbeddingVector* theta = embeddings.find(record->embedding_id);
    if (theta == nullptr) throw MissingEmbeddingError(record->sample_id, record->embedding_id);
    const auto class_id = classes.find(record->label);
    if (!class_id) {
      throw ClassIndexError(
          fmt::format("sample '{}' has label '{}' outside the class set", id, record->label));
    }
    out.push_back({normalize ? l2_normalized(*theta) : *theta, *class_id});
  }
  return out;
}

namespace {

RunResult execute_run(const Run& run, const DatasetManifest& manifest,
                      const EmbeddingStore& embeddings, const ClassSet& class_source,
                      const EvalOptions& options) {
  const ClassSet train_classes = select_classes(class_source, run.train_labels, options.normalize);
  const ClassSet test_classes = select_classes(class_source, run.test_labels, options.normalize);
  const TrainingSet train_set =
      build_training_set(run.train_ids, manifest, embeddings, train_classes, options.normalize);
  const TrainingSet test_set =
      build_training_set(run.test_ids, manifest, embeddings, test_classes, options.normalize);

  const CompatibilityMatrix w = train(train_set, train_classes, options.training);

  RunResult result{run.label,
                   run.evaluation_category,
                   run.training_categories,
                   run.fold,
                   train_set.size(),
                   test_set.size(),
                   empirical_risk(train_set, w, train_classes),
                   0.0,
                   ConfusionMatrix(run.test_labels)};
  for (const auto& sample : test_set) {
    result.confusion.add(sample.class_id, predict(sample.theta, w, test_classes));
  }
  result.accuracy = result.confusion.accuracy_percent();
  log()->info("{}: train {} / test {} samples, risk {:.4f}, top-1 {:.1f}%", run.label,
              result.train_size, result.test_size, result.final_risk, result.accuracy);
  return result;
}

}  // namespace

AccuracyReport run_plan(const EvaluationPlan& plan, const DatasetManifest& manifest,
                        const EmbeddingStore& embeddings, const ClassSet& class_source,
                        const EvalOptions& options) {
  options.training.validate();
  const std::size_t n = plan.runs.size();
  std::vector<std::optional<RunResult>> results(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = execute_run(plan.runs[i], manifest, embeddings, class_source, options);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(n, 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw RunError(plan.runs[i].label, e.what());
    }
  }

  AccuracyReport report{plan.setting, plan.seed, options.training, options.normalize,
                        fmt::format("{}: {} runs", to_string(plan.setting), n), {}};
  report.runs.reserve(n);
  for (auto& r : results) report.runs.push_back(std::move(*r));
  return report;
}

}  // namespace zsac
