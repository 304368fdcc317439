#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zsac/dataset.hpp"

namespace zsac {

enum class Setting { kS1 = 1, kS2 = 2, kS3 = 3, kS4 = 4 };

std::string_view to_string(Setting setting) noexcept;
std::optional<Setting> setting_from_number(int n) noexcept;

/// One train/test partition. Classes are named by label text; the train and
/// test ClassSets are materialized from these when the run executes.
struct Run {
  std::string label;
  std::string evaluation_category;
  std::vector<std::string> training_categories;
  /// 1-based fold index; 0 for settings without folds.
  std::size_t fold = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> train_labels;
  std::vector<std::string> test_ids;
  std::vector<std::string> test_labels;
  /// Setting 4 only: evaluation-class samples added to training.
  std::vector<std::string> few_shot_ids;
};

struct EvaluationPlan {
  Setting setting;
  std::uint64_t seed = 0;
  std::vector<Run> runs;
};

/// Strict mode enforces the 5 categories x 10 classes x 40 samples layout.
/// Relaxed mode accepts other shapes as long as every fold is non-empty.
struct PlanOptions {
  bool relaxed = false;
};

inline constexpr std::size_t kCategories = 5;
inline constexpr std::size_t kClassesPerCategory = 10;
inline constexpr std::size_t kSamplesPerClass = 40;
inline constexpr std::size_t kSetting1Folds = 5;
inline constexpr std::size_t kSetting4Folds = 8;

/// Seeded 5-fold grouping of one category's classes; each run trains on the
/// other folds' classes and tests on its own.
EvaluationPlan plan_setting1(const DatasetManifest& manifest, std::string_view category,
                             std::uint64_t seed, PlanOptions options = {});

/// plan_setting1 for every category, in manifest category order.
EvaluationPlan plan_setting1_all(const DatasetManifest& manifest, std::uint64_t seed,
                                 PlanOptions options = {});

/// One run per ordered (train category, test category) pair.
EvaluationPlan plan_setting2(const DatasetManifest& manifest, PlanOptions options = {});

/// Leave one category out.
EvaluationPlan plan_setting3(const DatasetManifest& manifest, PlanOptions options = {});

/// Leave one category out, plus one seeded fold of each evaluation class's
/// samples moved into training. One run per (category, fold).
EvaluationPlan plan_setting4(const DatasetManifest& manifest, std::uint64_t seed,
                             PlanOptions options = {});

/// Dispatches on `setting`; `category` restricts Setting 1 to one category.
EvaluationPlan make_plan(Setting setting, const DatasetManifest& manifest, std::uint64_t seed,
                         std::optional<std::string> category = std::nullopt,
                         PlanOptions options = {});

}  // namespace zsac
