#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "zsac/types.hpp"

namespace zsac {

struct ClassInfo {
  std::size_t id;
  std::string label;
  std::string category;

  friend bool operator==(const ClassInfo&, const ClassInfo&) = default;
};

/// A trained matrix plus what is needed to interpret it.
struct Model {
  CompatibilityMatrix w;
  std::vector<ClassInfo> classes;
  TrainingConfig config;
  /// Embeddings were L2-normalized before training.
  bool normalize = false;
};

std::vector<ClassInfo> class_infos(const ClassSet& classes);

/// {"d_x", "d_y", "w": [row-major], "classes": [...], "config": {...}}
std::string model_to_json(const Model& model);
Model model_from_json(std::string_view content, const std::string& source = "<model>");

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace zsac
