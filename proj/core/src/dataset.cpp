#include "zsac/dataset.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "text.hpp"
#include "zsac/error.hpp"
#include "zsac/frames.hpp"

namespace zsac {

using nlohmann::json;

namespace {

constexpr std::string_view kManifestHeader = "sample_id,label,category,embedding_id";

}  // namespace

DatasetManifest::DatasetManifest(std::vector<ManifestRecord> records)
    : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.sample_id.empty() || r.label.empty() || r.category.empty() || r.embedding_id.empty()) {
      throw ParameterError(fmt::format("manifest record {} has an empty field", i));
    }
    if (!by_id_.emplace(r.sample_id, i).second) {
      throw ParameterError(fmt::format("duplicate sample id '{}'", r.sample_id));
    }
    const auto [it, inserted] = label_category_.emplace(r.label, r.category);
    if (inserted) {
      labels_.push_back(r.label);
      if (std::find(categories_.begin(), categories_.end(), r.category) == categories_.end()) {
        categories_.push_back(r.category);
      }
    } else if (it->second != r.category) {
      throw ParameterError(fmt::format("label '{}' appears under categories '{}' and '{}'",
                                       r.label, it->second, r.category));
    }
  }
}

const std::string& DatasetManifest::category_of(std::string_view label) const {
  const auto it = label_category_.find(std::string(label));
  if (it == label_category_.end()) {
    throw ClassIndexError(fmt::format("label '{}' not in manifest", label));
  }
  return it->second;
}

std::vector<std::string> DatasetManifest::labels_in(std::string_view category) const {
  std::vector<std::string> out;
  for (const auto& label : labels_) {
    if (label_category_.at(label) == category) out.push_back(label);
  }
  return out;
}

std::vector<LabelSpec> DatasetManifest::label_specs() const {
  std::vector<LabelSpec> out;
  out.reserve(labels_.size());
  for (const auto& label : labels_) out.push_back({label, label_category_.at(label)});
  return out;
}

const ManifestRecord* DatasetManifest::find(std::string_view sample_id) const {
  const auto it = by_id_.find(std::string(sample_id));
  return it == by_id_.end() ? nullptr : &records_[it->second];
}

void EmbeddingStore::add(std::string id, EmbeddingVector vec) {
  if (dim_ && vec.dim() != *dim_) {
    throw DimensionError(
        fmt::format("embedding '{}' has dim {}, others have dim {}", id, vec.dim(), *dim_));
  }
  if (index_.contains(id)) throw ParameterError(fmt::format("duplicate embedding id '{}'", id));
  dim_ = vec.dim();
  index_.emplace(id, ids_.size());
  ids_.push_back(std::move(id));
  vectors_.push_back(std::move(vec));
}

const EmbeddingVector* EmbeddingStore::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

const EmbeddingVector& EmbeddingStore::at(std::string_view id) const {
  const EmbeddingVector* v = find(id);
  if (v == nullptr) throw MissingEmbeddingError(std::string(id), std::string(id));
  return *v;
}

DatasetManifest parse_manifest(std::string_view content, const std::string& source) {
  text::LineReader lines(content);
  std::string_view line;
  if (!lines.next(line) || text::trim(line) != kManifestHeader) {
    throw ParseError(source, 1, fmt::format("expected header '{}'", kManifestHeader));
  }
  std::vector<ManifestRecord> records;
  std::unordered_set<std::string> ids;
  std::unordered_map<std::string, std::string> label_category;
  while (lines.next(line)) {
    if (text::trim(line).empty()) continue;
    const std::size_t line_no = lines.line_number();
    const auto fields = text::split(line, ',');
    if (fields.size() != 4) {
      throw ParseError(source, line_no,
                       fmt::format("expected 4 comma-separated fields, got {}", fields.size()));
    }
    ManifestRecord r{std::string(text::trim(fields[0])), std::string(text::trim(fields[1])),
                     std::string(text::trim(fields[2])), std::string(text::trim(fields[3]))};
    if (r.sample_id.empty() || r.label.empty() || r.category.empty() || r.embedding_id.empty()) {
      throw ParseError(source, line_no, "empty field");
    }
    if (!ids.insert(r.sample_id).second) {
      throw ParseError(source, line_no, fmt::format("duplicate sample id '{}'", r.sample_id));
    }
    const auto [it, inserted] = label_category.emplace(r.label, r.category);
    if (!inserted && it->second != r.category) {
      throw ParseError(source, line_no,
                       fmt::format("label '{}' already belongs to category '{}'", r.label,
                                   it->second));
    }
    records.push_back(std::move(r));
  }
  return DatasetManifest(std::move(records));
}

std::string format_manifest(const DatasetManifest& manifest) {
  std::string out(kManifestHeader);
  out += '\n';
  for (const auto& r : manifest.records()) {
    out += fmt::format("{},{},{},{}\n", r.sample_id, r.label, r.category, r.embedding_id);
  }
  return out;
}

void write_manifest(const DatasetManifest& manifest, const std::string& path) {
  text::write_file(path, format_manifest(manifest));
}

EmbeddingStore parse_embeddings(std::string_view content, const std::string& source) {
  text::LineReader lines(content);
  std::string_view line;
  EmbeddingStore store;
  while (lines.next(line)) {
    if (text::trim(line).empty()) continue;
    const std::size_t line_no = lines.line_number();
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
    try {
      if (!obj.is_object()) throw ParseError(source, line_no, "expected a JSON object");
      std::string id = obj.at("id").get<std::string>();
      if (id.empty()) throw ParseError(source, line_no, "empty id");
      const bool has_frames = obj.contains("frames");
      const bool has_embedding = obj.contains("embedding");
      if (has_frames == has_embedding) {
        throw ParseError(source, line_no, "entry needs exactly one of 'frames' or 'embedding'");
      }
      if (has_embedding) {
        store.add(std::move(id), EmbeddingVector(obj.at("embedding").get<std::vector<double>>()));
      } else {
        FrameSequence seq{id, {}};
        for (const auto& frame : obj.at("frames")) {
          seq.frames.emplace_back(frame.get<std::vector<double>>());
        }
        store.add(std::move(id), aggregate_frames(seq));
      }
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const DimensionError& e) {
      throw DimensionError(fmt::format("{}:{}: {}", source, line_no, e.what()));
    } catch (const EmptyFramesError& e) {
      throw EmptyFramesError(fmt::format("{}:{}: {}", source, line_no, e.what()));
    } catch (const ParameterError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return store;
}

EmbeddingStore load_embeddings(const std::string& path) {
  return parse_embeddings(text::read_file(path), path);
}

std::string format_embeddings(const EmbeddingStore& store) {
  std::string out;
  for (const auto& id : store.ids()) {
    nlohmann::ordered_json line;
    line["id"] = id;
    const auto values = store.find(id)->values();
    line["embedding"] = std::vector<double>(values.begin(), values.end());
    out += line.dump();
    out += '\n';
  }
  return out;
}

void write_embeddings(const EmbeddingStore& store, const std::string& path) {
  text::write_file(path, format_embeddings(store));
}

void resolve_embeddings(DatasetManifest& manifest, const EmbeddingStore& embeddings) {
  for (const auto& r : manifest.records()) {
    if (embeddings.find(r.embedding_id) == nullptr) {
      throw MissingEmbeddingError(r.sample_id, r.embedding_id);
    }
  }
  if (const auto dim = embeddings.dim()) manifest.set_audio_dim(*dim);
}

LoadedDataset load_manifest(const std::string& manifest_path, const std::string& embeddings_path) {
  LoadedDataset data{parse_manifest(text::read_file(manifest_path), manifest_path),
                     load_embeddings(embeddings_path)};
  resolve_embeddings(data.manifest, data.embeddings);
  return data;
}

}  // namespace zsac
