#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsac/types.hpp"
#include "zsac/word_vectors.hpp"

namespace zsac {

enum class OovPolicy { kError, kSkip };

std::string_view to_string(OovPolicy policy) noexcept;
std::optional<OovPolicy> parse_oov_policy(std::string_view text) noexcept;

struct LabelSpec {
  std::string label;
  std::string category;

  friend bool operator==(const LabelSpec&, const LabelSpec&) = default;
};

/// Lowercases and splits on runs of whitespace and underscores. Hyphens stay
/// inside tokens.
std::vector<std::string> tokenize_label(std::string_view label);

/// Mean of the word vectors of the label's tokens. A repeated token counts
/// once per occurrence. Under kSkip, missing tokens are left out of the mean.
EmbeddingVector compose_label_embedding(std::string_view label, const WordVectorTable& table,
                                        OovPolicy policy = OovPolicy::kError);

/// Class ids follow input order. Errors from composition name the label.
ClassSet compose_class_set(std::span<const LabelSpec> labels, const WordVectorTable& table,
                           OovPolicy policy = OovPolicy::kError);

/// CSV with header "label,category".
std::vector<LabelSpec> load_label_list(const std::string& path);
void write_label_list(std::span<const LabelSpec> labels, const std::string& path);

/// JSONL, one {"id", "label", "category", "embedding"} object per class.
std::string format_class_embeddings(const ClassSet& classes);
void write_class_embeddings(const ClassSet& classes, const std::string& path);
ClassSet parse_class_embeddings(std::string_view content,
                                const std::string& source = "<class embeddings>");
ClassSet load_class_embeddings(const std::string& path);

}  // namespace zsac
