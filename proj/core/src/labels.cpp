#include "zsac/labels.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "text.hpp"
#include "zsac/error.hpp"

namespace zsac {

using nlohmann::json;

std::string_view to_string(OovPolicy policy) noexcept {
  return policy == OovPolicy::kError ? "error" : "skip";
}

std::optional<OovPolicy> parse_oov_policy(std::string_view text) noexcept {
  if (text == "error") return OovPolicy::kError;
  if (text == "skip") return OovPolicy::kSkip;
  return std::nullopt;
}

std::vector<std::string> tokenize_label(std::string_view label) {
  std::string lowered = text::to_lower(label);
  std::replace(lowered.begin(), lowered.end(), '_', ' ');
  std::vector<std::string> tokens;
  for (const auto piece : text::split_whitespace(lowered)) tokens.emplace_back(piece);
  return tokens;
}

EmbeddingVector compose_label_embedding(std::string_view label, const WordVectorTable& table,
                                        OovPolicy policy) {
  if (text::trim(label).empty()) throw ParameterError("cannot compose an empty label");
  const auto tokens = tokenize_label(label);
  std::vector<double> sum(table.dim(), 0.0);
  std::size_t found = 0;
  for (const auto& token : tokens) {
    const EmbeddingVector* vec = table.find(token);
    if (vec == nullptr) {
      if (policy == OovPolicy::kError) throw OovError(token);
      continue;
    }
    const auto v = vec->values();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
    ++found;
  }
  if (found == 0) {
    throw EmptyCompositionError(
        fmt::format("no token of label '{}' has a word vector", std::string(label)));
  }
  for (double& s : sum) s /= static_cast<double>(found);
  return EmbeddingVector(std::move(sum));
}

ClassSet compose_class_set(std::span<const LabelSpec> labels, const WordVectorTable& table,
                           OovPolicy policy) {
  if (labels.empty()) throw ParameterError("label list is empty");
  std::unordered_set<std::string> seen;
  std::vector<LabeledClass> classes;
  classes.reserve(labels.size());
  for (const auto& spec : labels) {
    if (!seen.insert(spec.label).second) {
      throw DuplicateLabelError(fmt::format("label '{}' appears more than once", spec.label));
    }
    try {
      classes.push_back({classes.size(), spec.label, spec.category,
                         compose_label_embedding(spec.label, table, policy)});
    } catch (const OovError& e) {
      throw OovError(e.token(), fmt::format("label '{}'", spec.label));
    }
  }
  return ClassSet(table.dim(), std::move(classes));
}

std::vector<LabelSpec> load_label_list(const std::string& path) {
  const std::string content = text::read_file(path);
  text::LineReader lines(content);
  std::string_view line;
  if (!lines.next(line) || text::trim(line) != "label,category") {
    throw ParseError(path, 1, "expected header 'label,category'");
  }
  std::vector<LabelSpec> out;
  while (lines.next(line)) {
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line, ',');
    if (fields.size() != 2) {
      throw ParseError(path, lines.line_number(), "expected 2 comma-separated fields");
    }
    const auto label = text::trim(fields[0]);
    if (label.empty()) throw ParseError(path, lines.line_number(), "empty label");
    out.push_back({std::string(label), std::string(text::trim(fields[1]))});
  }
  return out;
}

void write_label_list(std::span<const LabelSpec> labels, const std::string& path) {
  std::string out = "label,category\n";
  for (const auto& spec : labels) out += fmt::format("{},{}\n", spec.label, spec.category);
  text::write_file(path, out);
}

std::string format_class_embeddings(const ClassSet& classes) {
  std::string out;
  for (const auto& c : classes) {
    nlohmann::ordered_json line;
    line["id"] = c.class_id;
    line["label"] = c.label;
    line["category"] = c.category;
    line["embedding"] = std::vector<double>(c.embedding.values().begin(), c.embedding.values().end());
    out += line.dump();
    out += '\n';
  }
  return out;
}

void write_class_embeddings(const ClassSet& classes, const std::string& path) {
  text::write_file(path, format_class_embeddings(classes));
}

ClassSet parse_class_embeddings(std::string_view content, const std::string& source) {
  text::LineReader lines(content);
  std::string_view line;
  std::vector<LabeledClass> classes;
  std::optional<std::size_t> dim;
  while (lines.next(line)) {
    if (text::trim(line).empty()) continue;
    const std::size_t line_no = lines.line_number();
    try {
      const json obj = json::parse(line);
      auto values = obj.at("embedding").get<std::vector<double>>();
      if (dim && values.size() != *dim) {
        throw DimensionError(fmt::format("{}:{}: embedding has dim {}, expected {}", source,
                                         line_no, values.size(), *dim));
      }
      dim = values.size();
      classes.push_back({obj.at("id").get<std::size_t>(), obj.at("label").get<std::string>(),
                         obj.value("category", std::string{}), EmbeddingVector(std::move(values))});
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const ParameterError& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const DimensionError& e) {
      if (std::string_view(e.what()).starts_with(source)) throw;
      throw ParseError(source, line_no, e.what());
    }
  }
  if (classes.empty()) throw EmptyClassSetError(fmt::format("{}: no classes", source));
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.class_id < b.class_id; });
  std::unordered_set<std::string> labels;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].class_id != i) {
      throw ParseError(source, 0, fmt::format("class ids must be 0..{} without gaps or repeats",
                                              classes.size() - 1));
    }
    if (!labels.insert(classes[i].label).second) {
      throw DuplicateLabelError(fmt::format("{}: label '{}' appears more than once", source,
                                            classes[i].label));
    }
  }
  return ClassSet(*dim, std::move(classes));
}

ClassSet load_class_embeddings(const std::string& path) {
  return parse_class_embeddings(text::read_file(path), path);
}

}  // namespace zsac
