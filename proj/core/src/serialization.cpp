#include "zsac/serialization.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include "text.hpp"
#include "zsac/error.hpp"

namespace zsac {

std::vector<ClassInfo> class_infos(const ClassSet& classes) {
  std::vector<ClassInfo> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back({c.class_id, c.label, c.category});
  return out;
}

std::string model_to_json(const Model& model) {
  nlohmann::ordered_json j;
  j["d_x"] = model.w.rows();
  j["d_y"] = model.w.cols();
  j["w"] = std::vector<double>(model.w.data().begin(), model.w.data().end());
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : model.classes) {
    classes.push_back({{"id", c.id}, {"label", c.label}, {"category", c.category}});
  }
  j["classes"] = std::move(classes);
  j["config"] = {
      {"eta", model.config.eta},
      {"epochs", model.config.epochs},
      {"seed", model.config.seed},
      {"sort_order", std::string(to_string(model.config.sort_order))},
      {"shuffle_samples", model.config.shuffle_samples},
      {"normalize", model.normalize},
  };
  return j.dump(2) + "\n";
}

Model model_from_json(std::string_view content, const std::string& source) {
  try {
    const auto j = nlohmann::json::parse(content);
    const auto d_x = j.at("d_x").get<std::size_t>();
    const auto d_y = j.at("d_y").get<std::size_t>();
    auto values = j.at("w").get<std::vector<double>>();
    if (values.size() != d_x * d_y) {
      throw DimensionError(fmt::format("{}: w has {} entries, expected {}x{}", source,
                                       values.size(), d_x, d_y));
    }
    Model model{CompatibilityMatrix(d_x, d_y, std::move(values)), {}, {}, false};
    for (const auto& c : j.value("classes", nlohmann::json::array())) {
      model.classes.push_back({c.at("id").get<std::size_t>(), c.at("label").get<std::string>(),
                               c.value("category", std::string{})});
    }
    if (j.contains("config")) {
      const auto& cfg = j.at("config");
      model.config.eta = cfg.value("eta", model.config.eta);
      model.config.epochs = cfg.value("epochs", model.config.epochs);
      model.config.seed = cfg.value("seed", model.config.seed);
      model.config.shuffle_samples = cfg.value("shuffle_samples", model.config.shuffle_samples);
      const auto order = cfg.value("sort_order", std::string("descending"));
      const auto parsed = parse_sort_order(order);
      if (!parsed) throw ParseError(source, 0, fmt::format("unknown sort_order '{}'", order));
      model.config.sort_order = *parsed;
      model.normalize = cfg.value("normalize", false);
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, e.what());
  } catch (const ParameterError& e) {
    throw ParseError(source, 0, e.what());
  }
}

void save_model(const Model& model, const std::string& path) {
  text::write_file(path, model_to_json(model));
}

Model load_model(const std::string& path) { return model_from_json(text::read_file(path), path); }

}  // namespace zsac
