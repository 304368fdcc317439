#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zsac/types.hpp"

namespace zsac {

/// Token -> vector lookup loaded from a word2vec-style text table.
class WordVectorTable {
 public:
  explicit WordVectorTable(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  /// Inserts or replaces. Returns false when the token was already present.
  bool insert(std::string token, EmbeddingVector vec);

  const EmbeddingVector* find(std::string_view token) const;

  /// Tokens in first-insertion order.
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  /// How many duplicate token lines were overwritten while loading.
  std::size_t duplicate_count() const noexcept { return duplicates_; }
  void set_duplicate_count(std::size_t n) noexcept { duplicates_ = n; }

 private:
  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::vector<EmbeddingVector> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicates_ = 0;
};

/// Parses "<token> <v1> ... <v_dim>" lines with an optional "<count> <dim>"
/// header. Duplicate tokens keep the last occurrence.
WordVectorTable parse_word_vectors(std::string_view content,
                                   std::optional<std::size_t> expected_dim = std::nullopt,
                                   const std::string& source = "<word vectors>");

WordVectorTable load_word_vectors(const std::string& path,
                                  std::optional<std::size_t> expected_dim = std::nullopt);

/// Text form with a header line and 17 significant digits per value.
std::string format_word_vectors(const WordVectorTable& table);
void write_word_vectors(const WordVectorTable& table, const std::string& path);

}  // namespace zsac
