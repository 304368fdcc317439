#include "zsac/plan.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include <fmt/format.h>

#include "zsac/error.hpp"
#include "zsac/rng.hpp"

namespace zsac {
namespace {

using IdSet = std::unordered_set<std::string>;

std::map<std::string, std::vector<std::string>, std::less<>> samples_by_label(
    const DatasetManifest& manifest) {
  std::map<std::string, std::vector<std::string>, std::less<>> out;
  for (const auto& r : manifest.records()) out[r.label].push_back(r.sample_id);
  return out;
}

std::size_t category_index(const DatasetManifest& manifest, std::string_view category) {
  const auto& cats = manifest.categories();
  const auto it = std::find(cats.begin(), cats.end(), category);
  if (it == cats.end()) throw ProtocolError(fmt::format("category '{}' not in manifest", category));
  return static_cast<std::size_t>(it - cats.begin());
}

// Splits `items` into `k` contiguous chunks whose sizes differ by at most one.
template <typename T>
std::vector<std::vector<T>> chunk(const std::vector<T>& items, std::size_t k) {
  std::vector<std::vector<T>> out(k);
  const std::size_t base = items.size() / k;
  const std::size_t extra = items.size() % k;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    out[i].assign(items.begin() + static_cast<std::ptrdiff_t>(pos),
                  items.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return out;
}

// Sample ids of records whose label is in `labels`, in manifest order.
std::vector<std::string> ids_with_labels(const DatasetManifest& manifest,
                                         const std::vector<std::string>& labels) {
  const std::unordered_set<std::string> wanted(labels.begin(), labels.end());
  std::vector<std::string> out;
  for (const auto& r : manifest.records()) {
    if (wanted.contains(r.label)) out.push_back(r.sample_id);
  }
  return out;
}

std::vector<std::string> labels_outside(const DatasetManifest& manifest,
                                        std::string_view category) {
  std::vector<std::string> out;
  for (const auto& label : manifest.labels()) {
    if (manifest.category_of(label) != category) out.push_back(label);
  }
  return out;
}

std::vector<std::string> categories_except(const DatasetManifest& manifest,
                                           std::string_view category) {
  std::vector<std::string> out;
  for (const auto& c : manifest.categories()) {
    if (c != category) out.push_back(c);
  }
  return out;
}

void check_category(const DatasetManifest& manifest, std::string_view category,
                    std::size_t min_classes, std::size_t min_samples, PlanOptions options) {
  const auto labels = manifest.labels_in(category);
  const auto by_label = samples_by_label(manifest);
  if (!options.relaxed) {
    if (labels.size() != kClassesPerCategory) {
      throw ProtocolError(fmt::format("category '{}' has {} classes, expected {}", category,
                                      labels.size(), kClassesPerCategory));
    }
    for (const auto& label : labels) {
      const auto n = by_label.at(label).size();
      if (n != kSamplesPerClass) {
        throw ProtocolError(fmt::format("class '{}' has {} samples, expected {}", label, n,
                                        kSamplesPerClass));
      }
    }
    return;
  }
  if (labels.size() < min_classes) {
    throw ProtocolError(fmt::format("category '{}' has {} classes, need at least {}", category,
                                    labels.size(), min_classes));
  }
  for (const auto& label : labels) {
    const auto n = by_label.at(label).size();
    if (n < min_samples) {
      throw ProtocolError(
          fmt::format("class '{}' has {} samples, need at least {}", label, n, min_samples));
    }
  }
}

void check_corpus(const DatasetManifest& manifest, std::size_t min_samples,
                  PlanOptions options) {
  const auto n = manifest.categories().size();
  if (!options.relaxed && n != kCategories) {
    throw ProtocolError(fmt::format("manifest has {} categories, expected {}", n, kCategories));
  }
  if (n < 2) throw ProtocolError(fmt::format("manifest has {} categories, need at least 2", n));
  for (const auto& c : manifest.categories()) check_category(manifest, c, 1, min_samples, options);
}

void append_setting1_runs(const DatasetManifest& manifest, std::string_view category,
                          std::uint64_t seed, PlanOptions options, std::vector<Run>& runs) {
  const std::size_t cat_index = category_index(manifest, category);
  check_category(manifest, category, kSetting1Folds, 1, options);
  auto labels = manifest.labels_in(category);
  Rng rng(derive_seed(seed, cat_index));
  rng.shuffle(std::span<std::string>(labels));
  const auto folds = chunk(labels, kSetting1Folds);
  for (std::size_t k = 0; k < folds.size(); ++k) {
    Run run;
    run.label = fmt::format("S1-{}-fold{}", category, k + 1);
    run.evaluation_category = std::string(category);
    run.training_categories = {std::string(category)};
    run.fold = k + 1;
    const IdSet test_set(folds[k].begin(), folds[k].end());
    for (const auto& label : manifest.labels_in(category)) {
      (test_set.contains(label) ? run.test_labels : run.train_labels).push_back(label);
    }
    run.train_ids = ids_with_labels(manifest, run.train_labels);
    run.test_ids = ids_with_labels(manifest, run.test_labels);
    runs.push_back(std::move(run));
  }
}

}  // namespace

std::string_view to_string(Setting setting) noexcept {
  switch (setting) {
    case Setting::kS1: return "setting1";
    case Setting::kS2: return "setting2";
    case Setting::kS3: return "setting3";
    case Setting::kS4: return "setting4";
  }
  return "setting?";
}

std::optional<Setting> setting_from_number(int n) noexcept {
  if (n < 1 || n > 4) return std::nullopt;
  return static_cast<Setting>(n);
}

EvaluationPlan plan_setting1(const DatasetManifest& manifest, std::string_view category,
                             std::uint64_t seed, PlanOptions options) {
  EvaluationPlan plan{Setting::kS1, seed, {}};
  append_setting1_runs(manifest, category, seed, options, plan.runs);
  return plan;
}

EvaluationPlan plan_setting1_all(const DatasetManifest& manifest, std::uint64_t seed,
                                 PlanOptions options) {
  EvaluationPlan plan{Setting::kS1, seed, {}};
  for (const auto& c : manifest.categories()) {
    append_setting1_runs(manifest, c, seed, options, plan.runs);
  }
  return plan;
}

EvaluationPlan plan_setting2(const DatasetManifest& manifest, PlanOptions options) {
  check_corpus(manifest, 1, options);
  EvaluationPlan plan{Setting::kS2, 0, {}};
  for (const auto& train_cat : manifest.categories()) {
    for (const auto& test_cat : manifest.categories()) {
      if (train_cat == test_cat) continue;
      Run run;
      run.label = fmt::format("S2-{}_to_{}", train_cat, test_cat);
      run.evaluation_category = test_cat;
      run.training_categories = {train_cat};
      run.train_labels = manifest.labels_in(train_cat);
      run.test_labels = manifest.labels_in(test_cat);
      run.train_ids = ids_with_labels(manifest, run.train_labels);
      run.test_ids = ids_with_labels(manifest, run.test_labels);
      plan.runs.push_back(std::move(run));
    }
  }
  return plan;
}

EvaluationPlan plan_setting3(const DatasetManifest& manifest, PlanOptions options) {
  check_corpus(manifest, 1, options);
  EvaluationPlan plan{Setting::kS3, 0, {}};
  for (const auto& test_cat : manifest.categories()) {
    Run run;
    run.label = fmt::format("S3-{}", test_cat);
    run.evaluation_category = test_cat;
    run.training_categories = categories_except(manifest, test_cat);
    run.train_labels = labels_outside(manifest, test_cat);
    run.test_labels = manifest.labels_in(test_cat);
    run.train_ids = ids_with_labels(manifest, run.train_labels);
    run.test_ids = ids_with_labels(manifest, run.test_labels);
    plan.runs.push_back(std::move(run));
  }
  return plan;
}

EvaluationPlan plan_setting4(const DatasetManifest& manifest, std::uint64_t seed,
                             PlanOptions options) {
  check_corpus(manifest, kSetting4Folds, options);
  EvaluationPlan plan{Setting::kS4, seed, {}};
  const auto by_label = samples_by_label(manifest);
  for (std::size_t c = 0; c < manifest.categories().size(); ++c) {
    const auto& test_cat = manifest.categories()[c];
    const auto eval_labels = manifest.labels_in(test_cat);
    Rng rng(derive_seed(seed, c));
    // folds_per_class[i][k]: fold k of evaluation class i
    std::vector<std::vector<std::vector<std::string>>> folds_per_class;
    for (const auto& label : eval_labels) {
      auto ids = by_label.at(label);
      rng.shuffle(std::span<std::string>(ids));
      folds_per_class.push_back(chunk(ids, kSetting4Folds));
    }
    const auto outside = labels_outside(manifest, test_cat);
    for (std::size_t k = 0; k < kSetting4Folds; ++k) {
      IdSet few_shot;
      for (const auto& folds : folds_per_class) few_shot.insert(folds[k].begin(), folds[k].end());
      const IdSet outside_labels(outside.begin(), outside.end());

      Run run;
      run.label = fmt::format("S4-{}-fold{}", test_cat, k + 1);
      run.evaluation_category = test_cat;
      run.training_categories = categories_except(manifest, test_cat);
      run.fold = k + 1;
      for (const auto& label : manifest.labels()) {
        if (outside_labels.contains(label) || manifest.category_of(label) == test_cat) {
          run.train_labels.push_back(label);
        }
      }
      run.test_labels = eval_labels;
      for (const auto& r : manifest.records()) {
        if (outside_labels.contains(r.label)) {
          run.train_ids.push_back(r.sample_id);
        } else if (r.category == test_cat) {
          if (few_shot.contains(r.sample_id)) {
            run.train_ids.push_back(r.sample_id);
            run.few_shot_ids.push_back(r.sample_id);
          } else {
            run.test_ids.push_back(r.sample_id);
          }
        }
      }
      plan.runs.push_back(std::move(run));
    }
  }
  return plan;
}

EvaluationPlan make_plan(Setting setting, const DatasetManifest& manifest, std::uint64_t seed,
                         std::optional<std::string> category, PlanOptions options) {
  if (setting == Setting::kS1) {
    return category ? plan_setting1(manifest, *category, seed, options)
                    : plan_setting1_all(manifest, seed, options);
  }
  EvaluationPlan plan = setting == Setting::kS2   ? plan_setting2(manifest, options)
                        : setting == Setting::kS3 ? plan_setting3(manifest, options)
                                                  : plan_setting4(manifest, seed, options);
  if (category) {
    category_index(manifest, *category);
    std::erase_if(plan.runs, [&](const Run& r) { return r.evaluation_category != *category; });
  }
  return plan;
}

}  // namespace zsac
